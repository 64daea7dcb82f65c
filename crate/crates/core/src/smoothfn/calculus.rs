//! Decomposition at a point, derivatives, Taylor jets and composition.

use super::expr::SmoothExpr;
use super::omega::Omega;
use super::poly::{self, Poly};
use crate::error::{Error, Result};
use crate::rings::{Ring, RingElement};

/// Block expansion `e = sum_{j<n} a_j (x - lambda)^j + (x - lambda)^n r`.
///
/// Products combine the expansions of both factors once, so nested products
/// cost linear rather than exponential work in `n`.
pub fn expand_at(
    ring: &Ring,
    e: &SmoothExpr,
    lambda: &RingElement,
    n: usize,
) -> Result<(Vec<RingElement>, SmoothExpr)> {
    if n == 0 {
        return Ok((vec![], e.clone()));
    }
    if let Some(p) = e.as_poly(ring) {
        let mut coeffs = Vec::with_capacity(n);
        let mut rest = p;
        for _ in 0..n {
            let (v, q) = poly::divide_linear(ring, &rest, lambda);
            coeffs.push(v);
            rest = q;
        }
        return Ok((coeffs, SmoothExpr::poly(ring, rest)));
    }
    match e {
        SmoothExpr::Add(a, b) => {
            let (ca, ra) = expand_at(ring, a, lambda, n)?;
            let (cb, rb) = expand_at(ring, b, lambda, n)?;
            let coeffs = ca.iter().zip(&cb).map(|(x, y)| ring.add(x, y)).collect();
            Ok((coeffs, SmoothExpr::sum(ring, ra, rb)))
        }
        SmoothExpr::Scale(c, a) => {
            let (ca, ra) = expand_at(ring, a, lambda, n)?;
            let coeffs = ca.iter().map(|v| ring.mul(c, v)).collect();
            Ok((coeffs, SmoothExpr::scaled(ring, c.clone(), ra)))
        }
        SmoothExpr::Series(s) => {
            let (v, mut rest) = s.decompose(lambda)?;
            let mut coeffs = vec![v];
            for _ in 1..n {
                let (c, r) = expand_at(ring, &rest, lambda, 1)?;
                coeffs.push(c[0].clone());
                rest = r;
            }
            Ok((coeffs, rest))
        }
        SmoothExpr::Mul(a, b) => {
            let (ca, ra) = expand_at(ring, a, lambda, n)?;
            let (cb, rb) = expand_at(ring, b, lambda, n)?;
            let mut full = vec![ring.zero(); 2 * n - 1];
            for (i, x) in ca.iter().enumerate() {
                if ring.is_zero(x) {
                    continue;
                }
                for (j, y) in cb.iter().enumerate() {
                    full[i + j] = ring.add(&full[i + j], &ring.mul(x, y));
                }
            }
            let high = full.split_off(n);
            let pa = SmoothExpr::poly(ring, poly::from_shifted(ring, &ca, lambda));
            let pb = SmoothExpr::poly(ring, poly::from_shifted(ring, &cb, lambda));
            let shift = SmoothExpr::poly(ring, poly::pow(ring, &poly::linear(ring, lambda), n as u64));
            let mut r = SmoothExpr::poly(ring, poly::from_shifted(ring, &high, lambda));
            r = SmoothExpr::sum(ring, r, SmoothExpr::product(ring, pa, rb.clone()));
            r = SmoothExpr::sum(ring, r, SmoothExpr::product(ring, pb, ra.clone()));
            let rr = SmoothExpr::product(ring, ra, rb);
            r = SmoothExpr::sum(ring, r, SmoothExpr::product(ring, shift, rr));
            Ok((full, r))
        }
        SmoothExpr::Const(_) | SmoothExpr::X | SmoothExpr::Poly(_) => unreachable!(),
    }
}

pub(crate) fn decompose_at_unchecked(
    ring: &Ring,
    e: &SmoothExpr,
    lambda: &RingElement,
) -> Result<(RingElement, SmoothExpr)> {
    let (mut c, r) = expand_at(ring, e, lambda, 1)?;
    Ok((c.pop().expect("one coefficient"), r))
}

/// `e = e(lambda) + (x - lambda) cofactor`.
pub fn decompose_at(
    omega: &Omega,
    e: &SmoothExpr,
    lambda: &RingElement,
) -> Result<(RingElement, SmoothExpr)> {
    omega.check(lambda)?;
    decompose_at_unchecked(omega.ring(), e, lambda)
}

/// Truncated Taylor expansion at a point, exact over the ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet {
    ring: Ring,
    base: RingElement,
    coeffs: Vec<RingElement>,
}

impl Jet {
    pub fn new(ring: Ring, base: RingElement, coeffs: Vec<RingElement>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Precondition("a jet needs at least one coefficient".into()));
        }
        ring.check(&base)?;
        for c in &coeffs {
            ring.check(c)?;
        }
        Ok(Jet { ring, base, coeffs })
    }

    pub fn from_ints(ring: Ring, base: i64, coeffs: &[i64]) -> Result<Self> {
        Jet::new(ring, ring.from_i64(base), coeffs.iter().map(|&c| ring.from_i64(c)).collect())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn base(&self) -> &RingElement {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    fn same_frame(&self, other: &Jet) -> Result<()> {
        if self.ring != other.ring || self.base != other.base || self.order() != other.order() {
            return Err(Error::JetMismatch(format!(
                "jets at {} (order {}) and {} (order {})",
                self.ring.format_element(&self.base),
                self.order(),
                other.ring.format_element(&other.base),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Jet) -> Result<Jet> {
        self.same_frame(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| self.ring.add(a, b)).collect();
        Ok(Jet { coeffs, ..self.clone() })
    }

    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        self.same_frame(other)?;
        Ok(Jet { coeffs: cauchy(&self.ring, &self.coeffs, &other.coeffs, self.order() + 1), ..self.clone() })
    }

    /// Term-wise derivative; the order drops by one (order 0 stays a zero jet).
    pub fn derive(&self) -> Jet {
        let r = &self.ring;
        let mut coeffs: Vec<RingElement> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, a)| r.mul(&r.from_u64(n as u64), a))
            .collect();
        if coeffs.is_empty() {
            coeffs.push(r.zero());
        }
        Jet { coeffs, ..self.clone() }
    }

    /// `outer(inner)`, where `outer` is expanded at `inner`'s value.
    pub fn substitute(outer: &Jet, inner: &Jet) -> Result<Jet> {
        let r = inner.ring;
        if outer.ring != r || outer.base != inner.coeffs[0] {
            return Err(Error::JetMismatch(format!(
                "outer jet is based at {}, inner value is {}",
                r.format_element(&outer.base),
                r.format_element(&inner.coeffs[0])
            )));
        }
        let len = outer.order().min(inner.order()) + 1;
        let mut shift: Vec<RingElement> = inner.coeffs[..len].to_vec();
        shift[0] = r.zero();
        let mut power = vec![r.zero(); len];
        power[0] = r.one();
        let mut out = vec![r.zero(); len];
        for b in &outer.coeffs[..len] {
            for (o, p) in out.iter_mut().zip(&power) {
                *o = r.add(o, &r.mul(b, p));
            }
            power = cauchy(&r, &power, &shift, len);
        }
        Ok(Jet { ring: r, base: inner.base.clone(), coeffs: out })
    }

    pub fn reciprocal(&self) -> Result<Jet> {
        let r = &self.ring;
        let inv = r.inverse(&self.coeffs[0]).ok_or_else(|| {
            Error::NonInvertibleLeading(r.format_element(&self.coeffs[0]))
        })?;
        let minus_inv = r.neg(&inv);
        let mut out = vec![inv];
        for n in 1..self.coeffs.len() {
            let s = (1..=n).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&self.coeffs[j], &out[n - j])));
            out.push(r.mul(&minus_inv, &s));
        }
        Ok(Jet { coeffs: out, ..self.clone() })
    }

    /// The polynomial `sum a_n (x - base)^n`.
    pub fn to_poly(&self) -> Poly {
        poly::from_shifted(&self.ring, &self.coeffs, &self.base)
    }
}

fn cauchy(r: &Ring, a: &[RingElement], b: &[RingElement], len: usize) -> Vec<RingElement> {
    let mut out = vec![r.zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if r.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = r.add(&out[i + j], &r.mul(x, y));
        }
    }
    out
}

pub fn jet_at(omega: &Omega, e: &SmoothExpr, lambda: &RingElement, order: usize) -> Result<Jet> {
    omega.check(lambda)?;
    let ring = *omega.ring();
    let (coeffs, _) = expand_at(&ring, e, lambda, order + 1)?;
    Jet::new(ring, lambda.clone(), coeffs)
}

/// `k! a_k`, the `k`-th derivative at `lambda`.
pub fn derivative_at(omega: &Omega, e: &SmoothExpr, lambda: &RingElement, k: usize) -> Result<RingElement> {
    let ring = omega.ring();
    if k == 0 {
        return e.eval(omega, lambda);
    }
    let jet = jet_at(omega, e, lambda, k)?;
    Ok(ring.mul(&ring.factorial(k as u64), &jet.coeffs[k]))
}

/// Leibniz rule for the `k`-th derivative of `y z` at `lambda`.
pub fn leibniz_check(omega: &Omega, y: &SmoothExpr, z: &SmoothExpr, lambda: &RingElement, k: usize) -> Result<bool> {
    let r = *omega.ring();
    let prod = SmoothExpr::product(&r, y.clone(), z.clone());
    let lhs = derivative_at(omega, &prod, lambda, k)?;
    let mut rhs = r.zero();
    for n in 0..=k {
        let term = r.mul(
            &derivative_at(omega, y, lambda, k - n)?,
            &derivative_at(omega, z, lambda, n)?,
        );
        rhs = r.add(&rhs, &r.mul(&r.binomial(k as u64, n as u64), &term));
    }
    Ok(lhs == rhs)
}

/// `outer(inner)` for a polynomial outer function.
pub fn compose(ring: &Ring, outer: &SmoothExpr, inner: &SmoothExpr) -> Result<SmoothExpr> {
    let p = outer
        .as_poly(ring)
        .ok_or_else(|| Error::Composability("only polynomial outer functions compose as expressions".into()))?;
    if let Some(q) = inner.as_poly(ring) {
        return Ok(SmoothExpr::poly(ring, poly::compose(ring, &p, &q)));
    }
    Ok(p.iter().rev().fold(SmoothExpr::zero(), |acc, c| {
        SmoothExpr::sum(
            ring,
            SmoothExpr::product(ring, acc, inner.clone()),
            SmoothExpr::constant(ring, c.clone()),
        )
    }))
}

/// Chain rule `(z o y)' = z'(y) y'` at `lambda`, after checking that `y`
/// maps every probe into the domain of `z`.
pub fn chain_rule_check(
    outer_domain: &Omega,
    z: &SmoothExpr,
    inner_domain: &Omega,
    y: &SmoothExpr,
    lambda: &RingElement,
    probes: &[RingElement],
) -> Result<bool> {
    let r = *inner_domain.ring();
    if outer_domain.ring() != &r {
        return Err(Error::Composability("functions live over different rings".into()));
    }
    for t in probes.iter().chain(std::iter::once(lambda)) {
        let v = y.eval(inner_domain, t)?;
        if !outer_domain.contains(&v) {
            return Err(Error::Composability(format!(
                "y({}) = {} is outside {}",
                r.format_element(t),
                r.format_element(&v),
                outer_domain
            )));
        }
    }
    let y_at = y.eval(inner_domain, lambda)?;
    let lhs = if z.as_poly(&r).is_some() {
        let comp = compose(&r, z, y)?;
        derivative_at(inner_domain, &comp, lambda, 1)?
    } else {
        let outer = jet_at(outer_domain, z, &y_at, 1)?;
        let inner = jet_at(inner_domain, y, lambda, 1)?;
        Jet::substitute(&outer, &inner)?.coeffs[1].clone()
    };
    let rhs = r.mul(
        &derivative_at(outer_domain, z, &y_at, 1)?,
        &derivative_at(inner_domain, y, lambda, 1)?,
    );
    Ok(lhs == rhs)
}
