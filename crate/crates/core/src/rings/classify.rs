//! Ring-classification predicates: units, nilpotents, idempotents,
//! semi-integrality and properness.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{
    distinct_prime_factors, gcd_u64, is_prime_u64, mul_mod, FpPoly, Ring, RingElement, RingKind,
};
use crate::error::{Error, Result};

/// Largest modulus decided by exhaustive scan before falling back to the
/// structural answer.
pub const DEFAULT_SCAN_BOUND: u64 = 1 << 16;

pub fn is_unit(ring: &Ring, a: &RingElement) -> Result<bool> {
    ring.check(a)?;
    Ok(match (ring.kind(), a) {
        (RingKind::Integers, RingElement::Int(v)) => v.abs().is_one(),
        (RingKind::Modular { modulus }, RingElement::Residue(r)) => gcd_u64(*r, modulus) == 1,
        (RingKind::PolyOverPrime { .. }, RingElement::Poly(f)) => f.degree() == Some(0),
        _ => unreachable!("checked above"),
    })
}

pub fn is_nilpotent(ring: &Ring, a: &RingElement) -> Result<bool> {
    ring.check(a)?;
    Ok(match (ring.kind(), a) {
        // Z/n: a is nilpotent iff every prime dividing n divides a.
        (RingKind::Modular { modulus }, RingElement::Residue(r)) => distinct_prime_factors(modulus)
            .into_iter()
            .all(|q| r % q == 0),
        // Integral domains have no nonzero nilpotents.
        _ => ring.is_zero(a),
    })
}

pub fn is_idempotent(ring: &Ring, a: &RingElement) -> Result<bool> {
    ring.check(a)?;
    Ok(ring.mul(a, a) == *a)
}

/// Idempotent other than 0 and 1.
pub fn is_nontrivial_idempotent(ring: &Ring, a: &RingElement) -> Result<bool> {
    Ok(is_idempotent(ring, a)? && !ring.is_zero(a) && !ring.is_one(a))
}

/// Outcome of the semi-integral-domain classification, with its evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemiIntegralVerdict {
    /// `Z` and `F_p[t]` are integral domains.
    IntegralDomain,
    /// Exhaustive scan found no nonzero nilpotent and no nontrivial idempotent.
    ScannedClean,
    /// Beyond the scan bound: prime modulus, so a field.
    PrimeModulus,
    /// A nonzero nilpotent element.
    Nilpotent(RingElement),
    /// An idempotent other than 0 and 1.
    Idempotent(RingElement),
    /// Beyond the scan bound: composite modulus, so not a field, hence not
    /// semi-integral (finite semi-integral domains are fields).
    CompositeModulus,
}

impl SemiIntegralVerdict {
    pub fn is_semi_integral(&self) -> bool {
        matches!(
            self,
            Self::IntegralDomain | Self::ScannedClean | Self::PrimeModulus
        )
    }
}

impl fmt::Display for SemiIntegralVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::IntegralDomain => write!(f, "true (integral domain)"),
            Self::ScannedClean => write!(f, "true (no nilpotent or nontrivial idempotent)"),
            Self::PrimeModulus => write!(f, "true (prime modulus)"),
            Self::Nilpotent(e) => write!(f, "false (nilpotent {})", fmt_elem(e)),
            Self::Idempotent(e) => write!(f, "false (idempotent {})", fmt_elem(e)),
            Self::CompositeModulus => write!(f, "false (composite modulus)"),
        }
    }
}

fn fmt_elem(e: &RingElement) -> String {
    match e {
        RingElement::Int(v) => v.to_string(),
        RingElement::Residue(r) => r.to_string(),
        RingElement::Poly(p) => p.to_string(),
    }
}

/// Exhaustive scan of `Z/n` for the smallest nonzero nilpotent, then the
/// smallest nontrivial idempotent.
fn scan_modular(n: u64) -> SemiIntegralVerdict {
    let radical: u64 = distinct_prime_factors(n).into_iter().product();
    if radical != n {
        return SemiIntegralVerdict::Nilpotent(RingElement::Residue(radical));
    }
    for a in 2..n {
        if mul_mod(a, a, n) == a {
            return SemiIntegralVerdict::Idempotent(RingElement::Residue(a));
        }
    }
    SemiIntegralVerdict::ScannedClean
}

/// Classify `ring`, scanning `Z/n` exhaustively up to `bound` and deciding
/// larger moduli by primality.
pub fn semi_integral_verdict(ring: &Ring, bound: u64) -> SemiIntegralVerdict {
    match ring.kind() {
        RingKind::Integers | RingKind::PolyOverPrime { .. } => SemiIntegralVerdict::IntegralDomain,
        RingKind::Modular { modulus } if modulus <= bound => scan_modular(modulus),
        RingKind::Modular { modulus } => {
            if is_prime_u64(modulus) {
                SemiIntegralVerdict::PrimeModulus
            } else {
                SemiIntegralVerdict::CompositeModulus
            }
        }
    }
}

/// Semi-integrality decided by scan only; fails beyond `bound`.
pub fn is_semi_integral_with(ring: &Ring, bound: u64) -> Result<bool> {
    match ring.kind() {
        RingKind::Modular { modulus } if modulus > bound => Err(Error::Undecidable {
            what: format!("semi-integrality of {ring} by exhaustive scan"),
            bound,
        }),
        _ => Ok(semi_integral_verdict(ring, bound).is_semi_integral()),
    }
}

pub fn is_semi_integral(ring: &Ring) -> bool {
    semi_integral_verdict(ring, DEFAULT_SCAN_BOUND).is_semi_integral()
}

/// A triple violating the defining implication: `x != 0` is not a unit and
/// `x^n (x y + 1) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefinitionCounterexample {
    pub x: RingElement,
    pub y: RingElement,
    pub n: u64,
}

/// Search for a counterexample to the semi-integral-domain definition.
///
/// Finite rings are searched exhaustively (`x`, then `y` ascending, smallest
/// exponent). For `Z` and `F_p[t]`, `bound` limits the window of `x`, `y` and
/// the exponent.
pub fn semi_integral_definition_check(
    ring: &Ring,
    bound: u64,
) -> Option<DefinitionCounterexample> {
    match ring.kind() {
        RingKind::Modular { modulus } => definition_check_modular(modulus),
        RingKind::Integers => {
            let b = bound as i64;
            let window: Vec<RingElement> = (-b..=b).map(|v| ring.from_i64(v)).collect();
            definition_check_window(ring, &window, bound)
        }
        RingKind::PolyOverPrime { p } => {
            let window: Vec<RingElement> = (0..bound)
                .map(|i| RingElement::Poly(poly_from_index(i, p)))
                .collect();
            definition_check_window(ring, &window, bound)
        }
    }
}

/// The `i`-th polynomial of `F_p[t]`: base-`p` digits of `i` as coefficients.
pub(crate) fn poly_from_index(mut i: u64, p: u64) -> FpPoly {
    let mut digits = Vec::new();
    while i > 0 {
        digits.push(i % p);
        i /= p;
    }
    FpPoly::from_coeffs(digits, p)
}

fn definition_check_modular(n: u64) -> Option<DefinitionCounterexample> {
    for x in 1..n {
        if gcd_u64(x, n) == 1 {
            continue;
        }
        for y in 0..n {
            let w = (mul_mod(x, y, n) + 1) % n;
            // gcd(x^k, n) is non-decreasing in k; once it stops growing the
            // condition x^k w = 0 cannot change.
            let mut xk = x;
            let mut prev_g = 0;
            for k in 1..=64u64 {
                if mul_mod(xk, w, n) == 0 {
                    return Some(DefinitionCounterexample {
                        x: RingElement::Residue(x),
                        y: RingElement::Residue(y),
                        n: k,
                    });
                }
                let g = gcd_u64(xk, n);
                if g == prev_g {
                    break;
                }
                prev_g = g;
                xk = mul_mod(xk, x, n);
            }
        }
    }
    None
}

fn definition_check_window(
    ring: &Ring,
    window: &[RingElement],
    max_exp: u64,
) -> Option<DefinitionCounterexample> {
    for x in window {
        if ring.is_zero(x) || is_unit(ring, x).unwrap_or(false) {
            continue;
        }
        for y in window {
            let w = ring.add(&ring.mul(x, y), &ring.one());
            let mut xk = x.clone();
            for k in 1..=max_exp.max(1) {
                if ring.is_zero(&ring.mul(&xk, &w)) {
                    return Some(DefinitionCounterexample {
                        x: x.clone(),
                        y: y.clone(),
                        n: k,
                    });
                }
                xk = ring.mul(&xk, x);
            }
        }
    }
    None
}

/// A non-unit `t` with `1 + t` also a non-unit, if the ring is proper.
pub fn proper_witness(ring: &Ring) -> Option<RingElement> {
    match ring.kind() {
        RingKind::Integers => Some(RingElement::Int(BigInt::from(2))),
        RingKind::PolyOverPrime { .. } => ring.generator(),
        RingKind::Modular { modulus } if modulus <= DEFAULT_SCAN_BOUND => (0..modulus)
            .find(|&t| gcd_u64(t, modulus) != 1 && gcd_u64((t + 1) % modulus, modulus) != 1)
            .map(RingElement::Residue),
        RingKind::Modular { modulus } => {
            // Split n = m1 * m2 with m1 a full prime power and pick t = 0 mod m1,
            // t = -1 mod m2.
            let primes = distinct_prime_factors(modulus);
            if primes.len() < 2 {
                return None;
            }
            let mut m1 = 1u64;
            while modulus % (m1 * primes[0]) == 0 {
                m1 *= primes[0];
            }
            let m2 = modulus / m1;
            let inv = RingElement::Residue(m1 % m2);
            let inv = Ring::modular(m2).ok()?.inverse(&inv)?;
            let RingElement::Residue(inv) = inv else {
                return None;
            };
            let k = (m2 - inv) % m2;
            Some(RingElement::Residue(mul_mod(m1, k, modulus)))
        }
    }
}

/// Whether the ring has a non-unit `t` with `1 + t` a non-unit.
pub fn is_proper(ring: &Ring) -> bool {
    proper_witness(ring).is_some()
}
