//! Exact arithmetic over the supported commutative rings with identity.
//!
//! Three carriers are supported: the integers, residue rings `Z/n` and the
//! polynomial rings `F_p[t]`. Elements are kept in canonical form (least
//! non-negative residues, trailing-zero-free coefficient vectors) so equality
//! of elements is plain structural equality.

mod classify;
mod fp_poly;

pub use classify::{
    is_idempotent, is_nilpotent, is_nontrivial_idempotent, is_proper, is_semi_integral,
    is_semi_integral_with, is_unit, proper_witness, semi_integral_definition_check,
    semi_integral_verdict, DefinitionCounterexample, SemiIntegralVerdict, DEFAULT_SCAN_BOUND,
};
pub use fp_poly::FpPoly;
pub(crate) use classify::poly_from_index;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which carrier a [`Ring`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    Modular { modulus: u64 },
    PolyOverPrime { p: u64 },
}

/// A commutative ring with identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    kind: RingKind,
}

/// An element of one of the supported rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElement {
    Int(BigInt),
    Residue(u64),
    Poly(FpPoly),
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

impl Ring {
    pub fn integers() -> Self {
        Ring {
            kind: RingKind::Integers,
        }
    }

    pub fn modular(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidRing(format!("modulus {modulus} must be at least 2")));
        }
        Ok(Ring {
            kind: RingKind::Modular { modulus },
        })
    }

    pub fn poly_over_prime(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        // Coefficient products must fit in u128 comfortably.
        if p > u32::MAX as u64 {
            return Err(Error::InvalidRing(format!("prime {p} is too large")));
        }
        Ok(Ring {
            kind: RingKind::PolyOverPrime { p },
        })
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind {
            RingKind::Integers => 0,
            RingKind::Modular { modulus } => modulus,
            RingKind::PolyOverPrime { p } => p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, RingKind::Modular { .. })
    }

    /// Number of elements, for finite rings.
    pub fn order(&self) -> Option<u64> {
        match self.kind {
            RingKind::Modular { modulus } => Some(modulus),
            _ => None,
        }
    }

    /// Known integral domains: `Z`, `F_p[t]`, and `Z/p`.
    pub fn is_integral_domain(&self) -> bool {
        match self.kind {
            RingKind::Integers | RingKind::PolyOverPrime { .. } => true,
            RingKind::Modular { modulus } => is_prime_u64(modulus),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self.kind, RingKind::Modular { modulus } if is_prime_u64(modulus))
    }

    pub fn contains(&self, a: &RingElement) -> bool {
        match (self.kind, a) {
            (RingKind::Integers, RingElement::Int(_)) => true,
            (RingKind::Modular { modulus }, RingElement::Residue(r)) => *r < modulus,
            (RingKind::PolyOverPrime { p }, RingElement::Poly(f)) => f.is_canonical(p),
            _ => false,
        }
    }

    pub fn check(&self, a: &RingElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::CarrierMismatch {
                ring: self.to_string(),
                element: format!("{a:?}"),
            })
        }
    }

    fn mismatch(&self, a: &RingElement) -> ! {
        panic!("carrier mismatch: {a:?} is not an element of {self}")
    }

    pub fn zero(&self) -> RingElement {
        match self.kind {
            RingKind::Integers => RingElement::Int(BigInt::zero()),
            RingKind::Modular { .. } => RingElement::Residue(0),
            RingKind::PolyOverPrime { .. } => RingElement::Poly(FpPoly::zero()),
        }
    }

    pub fn one(&self) -> RingElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> RingElement {
        self.from_bigint(&BigInt::from(v))
    }

    /// Image of an integer under the canonical map `Z -> R`.
    pub fn from_bigint(&self, v: &BigInt) -> RingElement {
        match self.kind {
            RingKind::Integers => RingElement::Int(v.clone()),
            RingKind::Modular { modulus } => {
                let r = v.mod_floor(&BigInt::from(modulus));
                RingElement::Residue(r.to_u64().expect("residue below modulus"))
            }
            RingKind::PolyOverPrime { p } => {
                let r = v.mod_floor(&BigInt::from(p));
                RingElement::Poly(FpPoly::constant(r.to_u64().expect("residue below p"), p))
            }
        }
    }

    /// The generator `t` of `F_p[t]`.
    pub fn generator(&self) -> Option<RingElement> {
        match self.kind {
            RingKind::PolyOverPrime { p } => Some(RingElement::Poly(FpPoly::monomial(1, 1, p))),
            _ => None,
        }
    }

    pub fn is_zero(&self, a: &RingElement) -> bool {
        match a {
            RingElement::Int(v) => v.is_zero(),
            RingElement::Residue(r) => *r == 0,
            RingElement::Poly(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self, a: &RingElement) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        match (self.kind, a, b) {
            (RingKind::Integers, RingElement::Int(x), RingElement::Int(y)) => RingElement::Int(x + y),
            (RingKind::Modular { modulus }, RingElement::Residue(x), RingElement::Residue(y)) => {
                RingElement::Residue(((*x as u128 + *y as u128) % modulus as u128) as u64)
            }
            (RingKind::PolyOverPrime { p }, RingElement::Poly(x), RingElement::Poly(y)) => {
                RingElement::Poly(x.add(y, p))
            }
            _ => self.mismatch(a),
        }
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        match (self.kind, a) {
            (RingKind::Integers, RingElement::Int(x)) => RingElement::Int(-x),
            (RingKind::Modular { modulus }, RingElement::Residue(x)) => {
                RingElement::Residue(if *x == 0 { 0 } else { modulus - x })
            }
            (RingKind::PolyOverPrime { p }, RingElement::Poly(x)) => RingElement::Poly(x.neg(p)),
            _ => self.mismatch(a),
        }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        match (self.kind, a, b) {
            (RingKind::Integers, RingElement::Int(x), RingElement::Int(y)) => RingElement::Int(x * y),
            (RingKind::Modular { modulus }, RingElement::Residue(x), RingElement::Residue(y)) => {
                RingElement::Residue(mul_mod(*x, *y, modulus))
            }
            (RingKind::PolyOverPrime { p }, RingElement::Poly(x), RingElement::Poly(y)) => {
                RingElement::Poly(x.mul(y, p))
            }
            _ => self.mismatch(a),
        }
    }

    pub fn pow(&self, a: &RingElement, mut exp: u64) -> RingElement {
        if let RingElement::Int(x) = a {
            if let Ok(e) = u32::try_from(exp) {
                return RingElement::Int(num_traits::pow::Pow::pow(x, e));
            }
        }
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `n * 1` as a ring element.
    pub fn from_u64(&self, n: u64) -> RingElement {
        self.from_bigint(&BigInt::from(n))
    }

    /// `k!` as a ring element.
    pub fn factorial(&self, k: u64) -> RingElement {
        let mut acc = BigInt::one();
        for i in 2..=k {
            acc *= i;
        }
        self.from_bigint(&acc)
    }

    /// Binomial coefficient `C(n, k)` as a ring element.
    pub fn binomial(&self, n: u64, k: u64) -> RingElement {
        if k > n {
            return self.zero();
        }
        let mut acc = BigInt::one();
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        self.from_bigint(&acc)
    }

    /// Multiplicative inverse, if `a` is a unit.
    pub fn inverse(&self, a: &RingElement) -> Option<RingElement> {
        match (self.kind, a) {
            (RingKind::Integers, RingElement::Int(x)) => {
                (x.abs().is_one()).then(|| RingElement::Int(x.clone()))
            }
            (RingKind::Modular { modulus }, RingElement::Residue(x)) => {
                let ext = (*x as i128).extended_gcd(&(modulus as i128));
                (ext.gcd == 1).then(|| {
                    RingElement::Residue(ext.x.rem_euclid(modulus as i128) as u64)
                })
            }
            (RingKind::PolyOverPrime { p }, RingElement::Poly(f)) => {
                (f.degree() == Some(0)).then(|| {
                    let c = f.coeffs()[0];
                    RingElement::Poly(FpPoly::constant(pow_mod(c, p - 2, p), p))
                })
            }
            _ => self.mismatch(a),
        }
    }

    /// Some `q` with `b q = a`, when one exists (the least residue over `Z/n`).
    pub fn divide_exact(&self, a: &RingElement, b: &RingElement) -> Option<RingElement> {
        if self.is_zero(b) {
            return self.is_zero(a).then(|| self.zero());
        }
        match (a, b) {
            (RingElement::Int(x), RingElement::Int(y)) => {
                let (q, r) = x.div_rem(y);
                r.is_zero().then_some(RingElement::Int(q))
            }
            (RingElement::Poly(x), RingElement::Poly(y)) => {
                let p = self.characteristic();
                let (q, r) = x.div_rem(y, p)?;
                r.is_zero().then_some(RingElement::Poly(q))
            }
            (RingElement::Residue(x), RingElement::Residue(y)) => {
                // b q = a has a solution iff gcd(b, n) | a
                let n = self.characteristic();
                let g = gcd_u64(*y, n);
                if x % g != 0 {
                    return None;
                }
                let m = n / g;
                let yr = Ring::modular(m).ok()?;
                let inv = match yr.inverse(&RingElement::Residue((y / g) % m))? {
                    RingElement::Residue(v) => v,
                    _ => return None,
                };
                Some(RingElement::Residue(mul_mod((x / g) % m, inv, m)))
            }
            _ => None,
        }
    }

    /// All elements of a finite ring, in increasing order.
    pub fn elements(&self) -> Option<impl Iterator<Item = RingElement>> {
        match self.kind {
            RingKind::Modular { modulus } => Some((0..modulus).map(RingElement::Residue)),
            _ => None,
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<RingElement> {
        let text = text.trim();
        let err = |reason: &str| Error::ElementSyntax {
            text: text.to_string(),
            ring: self.to_string(),
            reason: reason.to_string(),
        };
        match self.kind {
            RingKind::Integers | RingKind::Modular { .. } => {
                let v: BigInt = text.parse().map_err(|_| err("expected a decimal integer"))?;
                Ok(self.from_bigint(&v))
            }
            RingKind::PolyOverPrime { p } => FpPoly::parse(text, p)
                .map(RingElement::Poly)
                .map_err(|reason| err(&reason)),
        }
    }

    pub fn format_element(&self, a: &RingElement) -> String {
        match a {
            RingElement::Int(v) => v.to_string(),
            RingElement::Residue(r) => r.to_string(),
            RingElement::Poly(f) => f.to_string(),
        }
    }

    /// Whether the printed form needs parentheses when used as a factor.
    pub fn element_is_compound(&self, a: &RingElement) -> bool {
        match a {
            RingElement::Poly(f) => f.term_count() > 1,
            RingElement::Int(v) => v.is_negative(),
            RingElement::Residue(_) => false,
        }
    }

    /// The integer value of an element of `Z`.
    pub fn as_integer<'a>(&self, a: &'a RingElement) -> Option<&'a BigInt> {
        match a {
            RingElement::Int(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Modular { modulus } => write!(f, "Z/{modulus}"),
            RingKind::PolyOverPrime { p } => write!(f, "GF({p})[t]"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    /// Ring literals: `Z`, `Z/12`, `GF(3)[t]`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "Z" {
            return Ok(Ring::integers());
        }
        if let Some(rest) = compact.strip_prefix("Z/") {
            let n: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidRing(format!("bad modulus in `{s}`")))?;
            return Ring::modular(n);
        }
        if let Some(rest) = compact.strip_prefix("GF(") {
            if let Some(p) = rest.strip_suffix(")[t]") {
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::InvalidRing(format!("bad prime in `{s}`")))?;
                return Ring::poly_over_prime(p);
            }
        }
        Err(Error::InvalidRing(format!(
            "unknown ring literal `{s}` (expected Z, Z/n or GF(p)[t])"
        )))
    }
}
