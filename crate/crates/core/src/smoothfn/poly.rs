//! Dense univariate polynomials over a [`Ring`], coefficients low to high with
//! no trailing zeros.

use crate::rings::{Ring, RingElement};

pub type Poly = Vec<RingElement>;

pub fn trim(ring: &Ring, mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| ring.is_zero(c)) {
        p.pop();
    }
    p
}

pub fn constant(ring: &Ring, c: RingElement) -> Poly {
    trim(ring, vec![c])
}

/// `x - a`.
pub fn linear(ring: &Ring, a: &RingElement) -> Poly {
    trim(ring, vec![ring.neg(a), ring.one()])
}

pub fn degree(p: &Poly) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn add(ring: &Ring, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let zero = ring.zero();
    let out = (0..n)
        .map(|i| ring.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(ring, out)
}

pub fn neg(ring: &Ring, a: &Poly) -> Poly {
    a.iter().map(|c| ring.neg(c)).collect()
}

pub fn scale(ring: &Ring, c: &RingElement, a: &Poly) -> Poly {
    trim(ring, a.iter().map(|x| ring.mul(c, x)).collect())
}

pub fn mul(ring: &Ring, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![ring.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
        }
    }
    trim(ring, out)
}

pub fn pow(ring: &Ring, a: &Poly, mut e: u64) -> Poly {
    let mut acc = constant(ring, ring.one());
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(ring, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(ring, &base, &base);
        }
    }
    acc
}

pub fn eval(ring: &Ring, p: &Poly, t: &RingElement) -> RingElement {
    p.iter()
        .rev()
        .fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, t), c))
}

/// Synthetic division by `x - lambda`: `p = p(lambda) + (x - lambda) q`.
pub fn divide_linear(ring: &Ring, p: &Poly, lambda: &RingElement) -> (RingElement, Poly) {
    if p.is_empty() {
        return (ring.zero(), vec![]);
    }
    let mut q = vec![ring.zero(); p.len() - 1];
    let mut acc = ring.zero();
    for i in (0..p.len()).rev() {
        acc = ring.add(&ring.mul(&acc, lambda), &p[i]);
        if i > 0 {
            q[i - 1] = acc.clone();
        }
    }
    (acc, trim(ring, q))
}

/// `sum_j c_j (x - lambda)^j` as a polynomial in `x`.
pub fn from_shifted(ring: &Ring, coeffs: &[RingElement], lambda: &RingElement) -> Poly {
    let lin = linear(ring, lambda);
    coeffs.iter().rev().fold(vec![], |acc, c| {
        add(ring, &mul(ring, &acc, &lin), &constant(ring, c.clone()))
    })
}

/// Formal derivative.
pub fn derivative(ring: &Ring, p: &Poly) -> Poly {
    trim(
        ring,
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| ring.mul(&ring.from_u64(i as u64), c))
            .collect(),
    )
}

/// `outer(inner(x))`.
pub fn compose(ring: &Ring, outer: &Poly, inner: &Poly) -> Poly {
    outer
        .iter()
        .rev()
        .fold(vec![], |acc, c| add(ring, &mul(ring, &acc, inner), &constant(ring, c.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::integers()
    }

    fn p(v: &[i64]) -> Poly {
        trim(&z(), v.iter().map(|&c| z().from_i64(c)).collect())
    }

    #[test]
    fn synthetic_division() {
        // x^3 = 1 + (x - 1)(x^2 + x + 1)
        let (v, q) = divide_linear(&z(), &p(&[0, 0, 0, 1]), &z().one());
        assert_eq!(v, z().one());
        assert_eq!(q, p(&[1, 1, 1]));
    }

    #[test]
    fn shifted_round_trip() {
        let lam = z().from_i64(3);
        let poly = p(&[4, -2, 0, 5]);
        let mut coeffs = vec![];
        let mut rest = poly.clone();
        for _ in 0..4 {
            let (v, q) = divide_linear(&z(), &rest, &lam);
            coeffs.push(v);
            rest = q;
        }
        assert!(rest.is_empty());
        assert_eq!(from_shifted(&z(), &coeffs, &lam), poly);
    }

    #[test]
    fn compose_and_derive() {
        let sq = p(&[0, 0, 1]);
        let cube = p(&[0, 0, 0, 1]);
        assert_eq!(compose(&z(), &sq, &cube), p(&[0, 0, 0, 0, 0, 0, 1]));
        assert_eq!(derivative(&z(), &cube), p(&[0, 0, 3]));
        assert_eq!(pow(&z(), &p(&[1, 1]), 3), p(&[1, 3, 3, 1]));
    }
}
