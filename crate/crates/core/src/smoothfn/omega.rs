//! Domains of smooth functions: absorbing subsets of a ring, their standard
//! enumerations `N -> Omega`, and the absorbing check.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rings::{gcd_u64, poly_from_index, Ring, RingElement, RingKind};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OmegaShape {
    WholeRing,
    /// The ring minus finitely many elements.
    RingMinusFiniteSet(Vec<RingElement>),
    /// A finite set of elements.
    ExplicitFinite(Vec<RingElement>),
    /// The ideal `gZ` of the integers, `g > 0`.
    Ideal(BigInt),
}

/// A subset of a ring with decidable membership.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Omega {
    ring: Ring,
    shape: OmegaShape,
}

impl Omega {
    pub fn whole(ring: Ring) -> Self {
        Omega {
            ring,
            shape: OmegaShape::WholeRing,
        }
    }

    pub fn minus(ring: Ring, excluded: Vec<RingElement>) -> Result<Self> {
        let excluded = canonical_set(&ring, excluded)?;
        Ok(Omega {
            ring,
            shape: OmegaShape::RingMinusFiniteSet(excluded),
        })
    }

    pub fn finite(ring: Ring, values: Vec<RingElement>) -> Result<Self> {
        let values = canonical_set(&ring, values)?;
        if values.is_empty() {
            return Err(Error::Precondition("an explicit domain must be non-empty".into()));
        }
        Ok(Omega {
            ring,
            shape: OmegaShape::ExplicitFinite(values),
        })
    }

    pub fn ideal(ring: Ring, g: BigInt) -> Result<Self> {
        if ring.kind() != RingKind::Integers {
            return Err(Error::Precondition("ideal domains are supported over Z only".into()));
        }
        if g.is_zero() {
            return Err(Error::Precondition("the ideal generator must be non-zero".into()));
        }
        Ok(Omega {
            ring,
            shape: OmegaShape::Ideal(g.abs()),
        })
    }

    /// `Z \ {0}`.
    pub fn integers_without_zero() -> Self {
        let z = Ring::integers();
        Omega::minus(z, vec![z.zero()]).expect("valid")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn shape(&self) -> &OmegaShape {
        &self.shape
    }

    pub fn contains(&self, t: &RingElement) -> bool {
        if !self.ring.contains(t) {
            return false;
        }
        match &self.shape {
            OmegaShape::WholeRing => true,
            OmegaShape::RingMinusFiniteSet(e) => !e.contains(t),
            OmegaShape::ExplicitFinite(v) => v.contains(t),
            OmegaShape::Ideal(g) => match t {
                RingElement::Int(v) => v.is_multiple_of(g),
                _ => false,
            },
        }
    }

    pub fn check(&self, t: &RingElement) -> Result<()> {
        if self.contains(t) {
            Ok(())
        } else {
            Err(Error::Domain {
                point: self.ring.format_element(t),
                omega: self.to_string(),
            })
        }
    }

    pub fn is_infinite(&self) -> bool {
        !self.ring.is_finite() && !matches!(self.shape, OmegaShape::ExplicitFinite(_))
    }

    /// Number of elements, for finite domains.
    pub fn size(&self) -> Option<u64> {
        match (&self.shape, self.ring.order()) {
            (OmegaShape::ExplicitFinite(v), _) => Some(v.len() as u64),
            (OmegaShape::WholeRing, Some(n)) => Some(n),
            (OmegaShape::RingMinusFiniteSet(e), Some(n)) => Some(n - e.len() as u64),
            _ => None,
        }
    }

    /// The `i`-th element of the standard enumeration: `0, 1, -1, 2, -2, ...`
    /// over `Z` (with excluded values skipped), base-`p` digit order over
    /// `F_p[t]`, increasing residues over `Z/n`, sorted order for explicit sets.
    pub fn enumerate(&self, i: usize) -> Option<RingElement> {
        match &self.shape {
            OmegaShape::WholeRing => self.base_element(i as u64),
            OmegaShape::ExplicitFinite(v) => v.get(i).cloned(),
            OmegaShape::Ideal(g) => match self.base_element(i as u64)? {
                RingElement::Int(v) => Some(RingElement::Int(v * g)),
                _ => None,
            },
            OmegaShape::RingMinusFiniteSet(e) => {
                let mut idx: Vec<u64> = e.iter().filter_map(|x| self.base_index(x)).collect();
                idx.sort_unstable();
                let mut j = i as u64;
                for k in idx {
                    if k <= j {
                        j += 1;
                    }
                }
                self.base_element(j)
            }
        }
    }

    /// Position of `t` in the standard enumeration.
    pub fn index_of(&self, t: &RingElement) -> Option<usize> {
        if !self.contains(t) {
            return None;
        }
        let idx = match &self.shape {
            OmegaShape::WholeRing => self.base_index(t)?,
            OmegaShape::ExplicitFinite(v) => v.iter().position(|x| x == t)? as u64,
            OmegaShape::Ideal(g) => {
                let RingElement::Int(v) = t else { return None };
                self.base_index(&RingElement::Int(v / g))?
            }
            OmegaShape::RingMinusFiniteSet(e) => {
                let k = self.base_index(t)?;
                let below = e
                    .iter()
                    .filter(|x| self.base_index(x).is_some_and(|j| j < k))
                    .count() as u64;
                k - below
            }
        };
        usize::try_from(idx).ok()
    }

    fn base_element(&self, i: u64) -> Option<RingElement> {
        match self.ring.kind() {
            RingKind::Integers => {
                let v = if i % 2 == 1 {
                    BigInt::from(i.div_ceil(2))
                } else {
                    -BigInt::from(i / 2)
                };
                Some(RingElement::Int(v))
            }
            RingKind::Modular { modulus } => (i < modulus).then_some(RingElement::Residue(i)),
            RingKind::PolyOverPrime { p } => Some(RingElement::Poly(poly_from_index(i, p))),
        }
    }

    fn base_index(&self, t: &RingElement) -> Option<u64> {
        match t {
            RingElement::Int(v) => {
                let a = v.abs().to_u64()?;
                if v.is_positive() {
                    a.checked_mul(2).map(|x| x - 1)
                } else {
                    a.checked_mul(2)
                }
            }
            RingElement::Residue(r) => Some(*r),
            RingElement::Poly(f) => {
                let p = self.ring.characteristic();
                f.coeffs()
                    .iter()
                    .rev()
                    .try_fold(0u64, |acc, &c| acc.checked_mul(p)?.checked_add(c))
            }
        }
    }

    /// Parse a domain description relative to `ring`: `Z`, `R`, `Z\{0,3}`,
    /// `{5}`, `2Z`, `GF(3)[t]\{0}`.
    pub fn parse(ring: Ring, text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| Error::Precondition(format!("cannot parse domain `{text}`: {why}"));
        let ring_name = ring.to_string();
        let is_whole = |w: &str| w == "R" || w == ring_name || w.parse::<Ring>().ok() == Some(ring);
        if is_whole(&s) {
            return Ok(Omega::whole(ring));
        }
        if let Some((whole, rest)) = s.split_once('\\') {
            if !is_whole(whole) {
                return Err(bad("left of `\\` must name the ring"));
            }
            return Omega::minus(ring, parse_set(&ring, rest).ok_or_else(|| bad("expected {..}"))??);
        }
        if s.starts_with('{') {
            return Omega::finite(ring, parse_set(&ring, &s).ok_or_else(|| bad("expected {..}"))??);
        }
        if let Some(g) = s.strip_suffix('Z') {
            let g: BigInt = g.parse().map_err(|_| bad("expected gZ with integer g"))?;
            return Omega::ideal(ring, g);
        }
        Err(bad("unknown form"))
    }

    /// Whether `Omega` is absorbing: for every `lambda` in `Omega` and
    /// non-zero `alpha` there is `beta` with `alpha beta != 0` and
    /// `lambda + beta alpha` in `Omega`.
    pub fn is_absorbing(&self, search_bound: u64) -> AbsorbingVerdict {
        if let RingKind::Modular { modulus } = self.ring.kind() {
            return self.absorbing_finite(modulus);
        }
        match &self.shape {
            // beta = 1 (or beta = g for gZ) always re-enters.
            OmegaShape::WholeRing | OmegaShape::Ideal(_) => AbsorbingVerdict::Verified,
            OmegaShape::RingMinusFiniteSet(e) => {
                // Distinct beta give distinct lambda + alpha beta; at most |E| miss.
                if (e.len() as u64) < search_bound {
                    AbsorbingVerdict::Verified
                } else {
                    AbsorbingVerdict::Inconclusive
                }
            }
            OmegaShape::ExplicitFinite(values) => {
                for lambda in values {
                    for a in 1..=search_bound as i64 {
                        for alpha in [a, -a] {
                            let alpha = self.ring.from_i64(alpha);
                            let ok = (1..=search_bound as i64).any(|b| {
                                [b, -b].into_iter().any(|beta| {
                                    let step = self.ring.mul(&alpha, &self.ring.from_i64(beta));
                                    !self.ring.is_zero(&step)
                                        && self.contains(&self.ring.add(lambda, &step))
                                })
                            });
                            if !ok {
                                return AbsorbingVerdict::Falsified {
                                    lambda: lambda.clone(),
                                    alpha,
                                };
                            }
                        }
                    }
                }
                AbsorbingVerdict::Inconclusive
            }
        }
    }

    fn absorbing_finite(&self, n: u64) -> AbsorbingVerdict {
        // The non-zero multiples of alpha are the non-zero multiples of gcd(alpha, n).
        let members: Vec<u64> = (0..n)
            .filter(|&v| self.contains(&RingElement::Residue(v)))
            .collect();
        for &lambda in &members {
            for alpha in 1..n {
                let g = gcd_u64(alpha, n);
                if alpha != g {
                    continue;
                }
                let ok = (1..n / g).any(|k| self.contains(&RingElement::Residue((lambda + k * g) % n)));
                if !ok {
                    return AbsorbingVerdict::Falsified {
                        lambda: RingElement::Residue(lambda),
                        alpha: RingElement::Residue(alpha),
                    };
                }
            }
        }
        AbsorbingVerdict::Verified
    }
}

fn canonical_set(ring: &Ring, mut v: Vec<RingElement>) -> Result<Vec<RingElement>> {
    for x in &v {
        ring.check(x)?;
    }
    v.sort();
    v.dedup();
    Ok(v)
}

fn parse_set(ring: &Ring, s: &str) -> Option<Result<Vec<RingElement>>> {
    let inner = s.strip_prefix('{')?.strip_suffix('}')?;
    if inner.is_empty() {
        return Some(Ok(vec![]));
    }
    Some(inner.split(',').map(|x| ring.parse_element(x)).collect())
}

impl fmt::Display for Omega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |v: &[RingElement]| {
            v.iter()
                .map(|x| self.ring.format_element(x))
                .collect::<Vec<_>>()
                .join(",")
        };
        match &self.shape {
            OmegaShape::WholeRing => write!(f, "{}", self.ring),
            OmegaShape::RingMinusFiniteSet(e) => write!(f, "{}\\{{{}}}", self.ring, set(e)),
            OmegaShape::ExplicitFinite(v) => write!(f, "{{{}}}", set(v)),
            OmegaShape::Ideal(g) => write!(f, "{g}Z"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbsorbingVerdict {
    Verified,
    /// No admissible `beta` for this `(lambda, alpha)`.
    Falsified {
        lambda: RingElement,
        alpha: RingElement,
    },
    Inconclusive,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_enumeration() {
        let z = Omega::whole(Ring::integers());
        let first: Vec<String> = (0..5).map(|i| z.enumerate(i).unwrap().clone()).map(|e| Ring::integers().format_element(&e)).collect();
        assert_eq!(first, ["0", "1", "-1", "2", "-2"]);
        for i in 0..50 {
            assert_eq!(z.index_of(&z.enumerate(i).unwrap()), Some(i));
        }
    }

    #[test]
    fn punctured_enumeration_is_a_bijection() {
        let r = Ring::integers();
        let om = Omega::minus(r, vec![r.zero(), r.from_i64(3), r.from_i64(-1)]).unwrap();
        let mut seen = std::collections::HashSet::new();
        for i in 0..60 {
            let t = om.enumerate(i).unwrap();
            assert!(om.contains(&t));
            assert_eq!(om.index_of(&t), Some(i));
            assert!(seen.insert(t));
        }
        assert_eq!(om.enumerate(0), Some(r.from_i64(1)));
        assert_eq!(om.enumerate(1), Some(r.from_i64(2)));
    }

    #[test]
    fn ideal_and_poly_enumeration() {
        let r = Ring::integers();
        let two = Omega::ideal(r, 2.into()).unwrap();
        assert_eq!(two.enumerate(2), Some(r.from_i64(-2)));
        assert_eq!(two.index_of(&r.from_i64(4)), Some(3));
        assert!(!two.contains(&r.from_i64(3)));
        let f: Ring = "GF(3)[t]".parse().unwrap();
        let om = Omega::whole(f);
        assert_eq!(om.enumerate(3), f.generator());
        for i in 0..40 {
            assert_eq!(om.index_of(&om.enumerate(i).unwrap()), Some(i));
        }
    }

    #[test]
    fn parse_and_print() {
        let r = Ring::integers();
        for text in ["Z", "Z\\{0}", "{5}", "2Z", "Z\\{-1,0,3}"] {
            let om = Omega::parse(r, text).unwrap();
            assert_eq!(om.to_string(), text);
        }
        assert_eq!(Omega::parse(r, "R").unwrap(), Omega::whole(r));
        assert!(Omega::parse(r, "Q").is_err());
        let f: Ring = "GF(3)[t]".parse().unwrap();
        assert!(Omega::parse(f, "GF(3)[t]\\{0, t}").is_ok());
    }

    #[test]
    fn absorbing_examples() {
        let r = Ring::integers();
        assert_eq!(Omega::integers_without_zero().is_absorbing(10), AbsorbingVerdict::Verified);
        assert_eq!(
            Omega::finite(r, vec![r.from_i64(5)]).unwrap().is_absorbing(10),
            AbsorbingVerdict::Falsified {
                lambda: r.from_i64(5),
                alpha: r.one()
            }
        );
        assert_eq!(Omega::whole(r).is_absorbing(1), AbsorbingVerdict::Verified);
        let z6 = Ring::modular(6).unwrap();
        assert_eq!(Omega::whole(z6).is_absorbing(1), AbsorbingVerdict::Verified);
        // {0, 3} in Z/6: from 0 with alpha = 2 the multiples are 2 and 4.
        let om = Omega::finite(z6, vec![z6.zero(), z6.from_i64(3)]).unwrap();
        assert!(matches!(om.is_absorbing(1), AbsorbingVerdict::Falsified { .. }));
    }
}
