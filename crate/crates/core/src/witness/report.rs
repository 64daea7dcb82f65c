//! The finite instances of the non-extension argument, with residues.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{
    coefficient, factor_exponent, kappa_exponent, omega, partial_sum_value, residue, term_digits,
    z82_eval, WitnessConfig,
};
use crate::error::Result;

/// Tail terms whose residue at `t = omega_n` is computed modulo `omega_n`.
const MODULAR_TAIL_TERMS: usize = 4;
/// The first tail term is also evaluated exactly when it is at most this long.
const EXACT_TAIL_DIGITS: f64 = 100_000.0;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepChecks {
    /// `omega_n` divides every coefficient `c_j`, `j > n`.
    pub tail_coeff: bool,
    /// `omega_n` divides `(z - I_{n+1})(omega_n)`.
    pub eval_at_omega: bool,
    /// `omega_n` divides `I_{n+1}(0)`.
    pub partial_at_zero: bool,
    /// `omega_n` is odd.
    pub parity: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepResidues {
    /// `c_{n+1} mod omega_n`.
    pub tail_coeff: String,
    /// `T_j(omega_n) mod omega_n` for the first few `j > n`.
    pub eval_at_omega: Vec<String>,
    /// `T_{n+1}(omega_n) mod omega_n` computed without modular reduction,
    /// when small enough.
    pub first_tail_term_exact: Option<String>,
    pub partial_at_zero: String,
    pub omega_mod_2: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessStep {
    pub n: usize,
    pub omega_digits: usize,
    pub omega: String,
    pub partial_at_zero_digits: usize,
    pub checks: StepChecks,
    pub residues: StepResidues,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityRecord {
    /// `z(2)`, equal to `zbar(0) + 2 y(2)` for any smooth extension `zbar`.
    pub z_at_2: String,
    /// `zbar(0) mod 2`; 1 means every extension value at 0 is odd.
    pub extension_at_zero_mod_2: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub depth: usize,
    pub steps: Vec<WitnessStep>,
    pub parity: ParityRecord,
    /// `omega_2 < omega_3 < ...`: a nonzero multiple of all of them has
    /// absolute value at least `omega_depth`.
    pub chain_increasing: bool,
    pub verdict: bool,
}

/// Residue of `T_j(t) mod m` without building `T_j(t)`.
fn term_residue(j: usize, t: &BigInt, m: &BigInt) -> BigInt {
    let m = &m.abs();
    let mut c = if j == 0 { BigInt::one() } else { BigInt::from(2) };
    for q in 2..=j {
        let e = BigInt::from(kappa_exponent(q));
        let prod = (2..=q as u64).fold(BigInt::one(), |acc, k| (acc * BigInt::from(k).modpow(&e, m)) % m);
        c = (c * (BigInt::one() + 2 * prod)) % m;
    }
    let e = BigInt::from(factor_exponent(j));
    let te = residue(t, m).modpow(&e, m);
    let block = (1..=(j as u64 + 1)).fold(BigInt::one(), |acc, k| {
        (acc * residue(&(BigInt::from(k).modpow(&e, m) - &te), m)) % m
    });
    residue(&(c * block.modpow(&BigInt::from(j + 1), m)), m)
}

fn step(n: usize, config: &WitnessConfig) -> Result<WitnessStep> {
    let w = omega(n, config.max_digits)?;
    let zero = BigInt::zero();

    // the coefficient of term j > n is 2 kappa_2 ... kappa_j, which contains
    // every factor of omega_n; the next one is also reduced explicitly
    let next = coefficient(n + 1, config.max_digits)?;
    let tail_coeff = residue(&next, &w);

    let tail: Vec<BigInt> = (n + 1..=n + MODULAR_TAIL_TERMS).map(|j| term_residue(j, &w, &w)).collect();
    let exact = if term_digits(n + 1, &w) <= EXACT_TAIL_DIGITS {
        Some(residue(&super::term_value(n + 1, &w, config.max_digits)?, &w))
    } else {
        None
    };

    let at_zero = partial_sum_value(n + 1, &zero, config)?;
    let partial_res = residue(&at_zero, &w);
    let odd = residue(&w, &BigInt::from(2));

    let checks = StepChecks {
        tail_coeff: tail_coeff.is_zero(),
        eval_at_omega: tail.iter().all(Zero::is_zero) && exact.as_ref().is_none_or(Zero::is_zero),
        partial_at_zero: partial_res.is_zero(),
        parity: odd.is_one(),
    };
    let passed = checks.tail_coeff && checks.eval_at_omega && checks.partial_at_zero && checks.parity;
    Ok(WitnessStep {
        n,
        omega_digits: w.to_string().len(),
        omega: w.to_string(),
        partial_at_zero_digits: at_zero.abs_digits(),
        checks,
        residues: StepResidues {
            tail_coeff: tail_coeff.to_string(),
            eval_at_omega: tail.iter().map(|r| r.to_string()).collect(),
            first_tail_term_exact: exact.map(|r| r.to_string()),
            partial_at_zero: partial_res.to_string(),
            omega_mod_2: odd.to_string(),
        },
        passed,
    })
}

trait Digits {
    fn abs_digits(&self) -> usize;
}

impl Digits for BigInt {
    fn abs_digits(&self) -> usize {
        self.magnitude().to_string().len()
    }
}

/// Check every step `n = 2..=depth` of the divisibility chain.
pub fn verify_nonextension(config: &WitnessConfig) -> Result<WitnessReport> {
    config.validate()?;
    let ns: Vec<usize> = (2..=config.depth).collect();
    let steps = config
        .execution
        .map(&ns, |&n| step(n, config))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let z2 = z82_eval(&BigInt::from(2), config)?;
    let parity = ParityRecord {
        z_at_2: z2.to_string(),
        extension_at_zero_mod_2: z2.mod_floor(&BigInt::from(2)).to_string(),
    };
    let omegas: Vec<BigInt> = steps.iter().map(|s| s.omega.parse().expect("decimal")).collect();
    let chain_increasing = omegas.windows(2).all(|w| w[0] < w[1]);
    let verdict = steps.iter().all(|s| s.passed) && chain_increasing && parity.extension_at_zero_mod_2 == "1";
    Ok(WitnessReport { depth: config.depth, steps, parity, chain_increasing, verdict })
}

fn elide(s: &str, limit: Option<usize>) -> String {
    match limit {
        Some(l) if s.len() > l && l >= 2 => {
            format!("{}...{} ({} digits)", &s[..l / 2], &s[s.len() - l / 2..], s.len())
        }
        _ => s.to_string(),
    }
}

impl WitnessReport {
    /// Text rendering; long integers are shortened to `digits_limit` digits.
    pub fn render_text(&self, digits_limit: Option<usize>) -> String {
        let mut out = String::new();
        let ok = |b: bool| if b { "ok" } else { "FAILED" };
        for s in &self.steps {
            out.push_str(&format!("step n={}: omega_{} = {}\n", s.n, s.n, elide(&s.omega, digits_limit)));
            out.push_str(&format!(
                "  tail coefficients divisible: {} (residue {})\n",
                ok(s.checks.tail_coeff),
                s.residues.tail_coeff
            ));
            out.push_str(&format!(
                "  (z - I_{})(omega_{}) divisible: {} (residues {})\n",
                s.n + 1,
                s.n,
                ok(s.checks.eval_at_omega),
                s.residues.eval_at_omega.join(", ")
            ));
            if let Some(e) = &s.residues.first_tail_term_exact {
                out.push_str(&format!("  first tail term, exact residue: {e}\n"));
            }
            out.push_str(&format!(
                "  I_{}(0) divisible: {} (residue {}, {} digits)\n",
                s.n + 1,
                ok(s.checks.partial_at_zero),
                s.residues.partial_at_zero,
                s.partial_at_zero_digits
            ));
            out.push_str(&format!("  omega_{} odd: {}\n", s.n, ok(s.checks.parity)));
        }
        out.push_str(&format!(
            "parity: z(2) = {}, extension value at 0 is {} mod 2\n",
            self.parity.z_at_2, self.parity.extension_at_zero_mod_2
        ));
        out.push_str(&format!("omega chain increasing: {}\n", ok(self.chain_increasing)));
        out.push_str(&format!(
            "verdict: {}\n",
            if self.verdict { "no smooth extension to Z (verified)" } else { "FAILED" }
        ));
        out
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text(None))
    }
}
