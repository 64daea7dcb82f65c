//! Big-integer verification for the function
//! `z(t) = sum_n c_n prod_{k=1}^{n+1} (k^{E_n} - t^{E_n})^{n+1}` on `Z \ {0}`,
//! with `E_n = 2 (n+1)^n`, `c_0 = 1` and `c_n = 2 omega_n` for `n >= 1`, where
//! `omega_n = prod_{m=2}^n kappa_m` and `kappa_m = 1 + 2 prod_{k=2}^m k^{2 m^m}`.
//!
//! The function is smooth on `Z \ {0}` but has no smooth extension to `Z`:
//! any extension value at 0 would be divisible by every `omega_n` and odd.

mod report;
mod series;

pub use report::{verify_nonextension, ParityRecord, StepChecks, StepResidues, WitnessReport, WitnessStep};
pub use series::{partial_sum_expr, z82_omega, z82_series, Z82_NAME};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exec::Execution;

pub const DEFAULT_DEPTH: usize = 3;
/// Depths above this need [`WitnessConfig::allow_deep`].
pub const SHALLOW_DEPTH: usize = 3;
pub const MAX_DEPTH: usize = 5;
pub const DEFAULT_MAX_DIGITS: u64 = 1_000_000;
pub const MAX_DIGITS_ENV: &str = "SMOOTHRING_MAX_DIGITS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessConfig {
    /// Largest `n` in the divisibility chain.
    pub depth: usize,
    pub allow_deep: bool,
    /// Refuse to build integers with more decimal digits than this.
    pub max_digits: u64,
    /// Points where the closed form is compared with the series form.
    pub probes: Vec<i64>,
    pub execution: Execution,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig {
            depth: DEFAULT_DEPTH,
            allow_deep: false,
            max_digits: max_digits_from_env(),
            probes: vec![1, -1, 2, -2, 3, -3, 4],
            execution: Execution::default(),
        }
    }
}

impl WitnessConfig {
    pub fn with_depth(depth: usize) -> Self {
        WitnessConfig { depth, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.depth < 2 {
            return Err(Error::Precondition(format!("depth must be at least 2, got {}", self.depth)));
        }
        let max = if self.allow_deep { MAX_DEPTH } else { SHALLOW_DEPTH };
        if self.depth > max {
            return Err(Error::DepthExceeded { requested: self.depth, max });
        }
        Ok(())
    }
}

/// Digit cap from `SMOOTHRING_MAX_DIGITS`, or the default when unset or invalid.
pub fn max_digits_from_env() -> u64 {
    std::env::var(MAX_DIGITS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DIGITS)
}

/// `E_n = 2 (n+1)^n`.
pub fn factor_exponent(n: usize) -> u64 {
    2 * (n as u64 + 1).pow(n as u32)
}

/// `2 m^m`, the exponent inside `kappa_m`.
pub fn kappa_exponent(m: usize) -> u64 {
    2 * (m as u64).pow(m as u32)
}

fn check_digits(digits: f64, cap: u64) -> Result<()> {
    if digits > cap as f64 {
        return Err(Error::TooLarge { digits: digits.ceil() as u64, cap });
    }
    Ok(())
}

fn kappa_digits(m: usize) -> f64 {
    kappa_exponent(m) as f64 * (2..=m).map(|k| (k as f64).log10()).sum::<f64>() + 1.0
}

/// Decimal digits of `omega_n`, estimated from logarithms.
pub fn omega_digits_estimate(n: usize) -> f64 {
    (2..=n).map(kappa_digits).sum::<f64>() + 1.0
}

fn pow(base: &BigInt, e: u64) -> BigInt {
    num_traits::pow::Pow::pow(base, e)
}

/// `kappa_m = 1 + 2 prod_{k=2}^m k^{2 m^m}`.
pub fn kappa(m: usize, max_digits: u64) -> Result<BigInt> {
    if m < 2 {
        return Err(Error::Precondition(format!("kappa_m needs m >= 2, got {m}")));
    }
    check_digits(kappa_digits(m), max_digits)?;
    let e = kappa_exponent(m);
    let prod = (2..=m as u64).fold(BigInt::one(), |acc, k| acc * pow(&BigInt::from(k), e));
    Ok(BigInt::one() + 2 * prod)
}

/// `omega_n = prod_{m=2}^n kappa_m`; `omega_1 = 1`.
pub fn omega(n: usize, max_digits: u64) -> Result<BigInt> {
    check_digits(omega_digits_estimate(n), max_digits)?;
    (2..=n).try_fold(BigInt::one(), |acc, m| Ok(acc * kappa(m, max_digits)?))
}

/// Coefficient `c_n` of term `n`.
pub fn coefficient(n: usize, max_digits: u64) -> Result<BigInt> {
    if n == 0 {
        return Ok(BigInt::one());
    }
    Ok(2 * omega(n, max_digits)?)
}

pub(crate) fn term_digits(n: usize, t: &BigInt) -> f64 {
    let tl = t.abs().to_string().len() as f64;
    let base = tl.max(((n + 1) as f64).log10()) + 0.31;
    let e = factor_exponent(n) as f64;
    ((n + 1) * (n + 1)) as f64 * e * base + omega_digits_estimate(n) + 1.0
}

/// Term `n` evaluated exactly at `t`.
pub fn term_value(n: usize, t: &BigInt, max_digits: u64) -> Result<BigInt> {
    // even exponent: (k^E - t^E) vanishes exactly when |t| = k
    if !t.is_zero() && t.abs() <= BigInt::from(n + 1) {
        return Ok(BigInt::zero());
    }
    check_digits(term_digits(n, t), max_digits)?;
    let e = factor_exponent(n);
    let te = pow(t, e);
    let block = (1..=(n as u64 + 1)).fold(BigInt::one(), |acc, k| acc * (pow(&BigInt::from(k), e) - &te));
    Ok(coefficient(n, max_digits)? * pow(&block, n as u64 + 1))
}

/// `I_len(t) = sum_{n < len} T_n(t)`, defined at every integer including 0.
pub fn partial_sum_value(len: usize, t: &BigInt, config: &WitnessConfig) -> Result<BigInt> {
    let idx: Vec<usize> = (0..len).collect();
    let terms = config.execution.map(&idx, |&n| term_value(n, t, config.max_digits));
    terms.into_iter().try_fold(BigInt::zero(), |acc, v| Ok(acc + v?))
}

/// Exact value of `z` at a nonzero integer. For `|t| = m` only the terms
/// `n <= m - 2` survive, because term `n` has the factor `(m^E - t^E)` once
/// `m <= n + 1`.
pub fn z82_eval(t: &BigInt, config: &WitnessConfig) -> Result<BigInt> {
    if t.is_zero() {
        return Err(Error::Domain { point: "0".into(), omega: "Z\\{0}".into() });
    }
    let m: usize = t
        .abs()
        .try_into()
        .map_err(|_| Error::TooLarge { digits: t.to_string().len() as u64, cap: config.max_digits })?;
    let terms = m.saturating_sub(1);
    if terms > 0 {
        check_digits(term_digits(terms - 1, t), config.max_digits)?;
    }
    partial_sum_value(terms, t, config)
}

pub fn z82_eval_i64(t: i64) -> Result<BigInt> {
    z82_eval(&BigInt::from(t), &WitnessConfig::default())
}

/// Whether `(lambda - omega)^n` divides `value`: elements of the `n`-th power
/// of the ideal of functions vanishing at `omega` take such values at `lambda`.
pub fn verify_analyticity_step(omega: &BigInt, lambda: &BigInt, n: u32, value: &BigInt) -> Result<bool> {
    let d = lambda - omega;
    if d.abs() <= BigInt::one() {
        return Err(Error::Precondition(format!(
            "lambda - omega = {d} must not be 0 or a unit"
        )));
    }
    Ok(value.is_multiple_of(&num_traits::pow(d, n as usize)))
}

/// `value mod m` in `[0, |m|)`.
pub(crate) fn residue(value: &BigInt, m: &BigInt) -> BigInt {
    value.mod_floor(&m.abs())
}
