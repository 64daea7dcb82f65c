//! Obstructions and probes: integrality of divided differences, the
//! indicator argument, wild functions in positive characteristic.

use super::calculus::derivative_at;
use super::expr::{CoeffSource, ExponentFamily, ProductSeries, SmoothExpr};
use super::omega::Omega;
use super::poly::{self, Poly};
use crate::error::{Error, Result};
use crate::rings::{Ring, RingElement};

/// A divided difference that leaves the ring: `(f(t) - f(lambda)) / (t - lambda)`
/// at nesting depth `order`, after fixing the base points in `path`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityWitness {
    pub order: usize,
    pub path: Vec<RingElement>,
    pub lambda: RingElement,
    pub t: RingElement,
    pub numerator: RingElement,
    pub denominator: RingElement,
}

/// Search for a non-integral iterated divided difference of `f` over
/// `window` (pairs taken in window order, base point outermost). A witness
/// rules out smoothness; `None` proves nothing.
pub fn integrality_obstruction<F>(
    ring: &Ring,
    window: &[RingElement],
    order: usize,
    f: F,
) -> Result<Option<IntegralityWitness>>
where
    F: Fn(&RingElement) -> Result<RingElement>,
{
    let table = window
        .iter()
        .map(|t| Ok((t.clone(), f(t)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(divided(ring, &table, order, 1, &mut vec![]))
}

fn divided(
    ring: &Ring,
    table: &[(RingElement, RingElement)],
    order: usize,
    level: usize,
    path: &mut Vec<RingElement>,
) -> Option<IntegralityWitness> {
    if level > order {
        return None;
    }
    for (lambda, fl) in table {
        let mut next = Vec::with_capacity(table.len());
        for (t, ft) in table {
            if t == lambda {
                continue;
            }
            let num = ring.sub(ft, fl);
            let den = ring.sub(t, lambda);
            match ring.divide_exact(&num, &den) {
                Some(q) => next.push((t.clone(), q)),
                None => {
                    return Some(IntegralityWitness {
                        order: level,
                        path: path.clone(),
                        lambda: lambda.clone(),
                        t: t.clone(),
                        numerator: num,
                        denominator: den,
                    })
                }
            }
        }
        path.push(lambda.clone());
        let found = divided(ring, &next, order, level + 1, path);
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndicatorOutcome {
    /// `0 = eta + eta^2 beta psi(point)` has no solution `psi(point)`.
    NoDecomposition {
        beta: RingElement,
        point: RingElement,
    },
    /// `eta` is a unit; the argument then needs a non-unit of the ring
    /// instead, recorded here when one exists.
    UnitEta { non_unit: Option<RingElement> },
}

impl IndicatorOutcome {
    pub fn is_nonsmooth(&self) -> bool {
        matches!(self, IndicatorOutcome::NoDecomposition { .. })
    }
}

/// Probe the function equal to `eta` at `lambda` and zero elsewhere for a
/// decomposition `eta + (x - lambda) psi`.
pub fn indicator_nonsmoothness_check(
    omega: &Omega,
    lambda: &RingElement,
    eta: &RingElement,
    probe_bound: u64,
) -> Result<IndicatorOutcome> {
    let r = *omega.ring();
    omega.check(lambda)?;
    r.check(eta)?;
    if r.is_zero(eta) {
        return Err(Error::Precondition("eta must be nonzero".into()));
    }
    if r.inverse(eta).is_some() {
        let non_unit = (2..=probe_bound.max(2))
            .map(|v| r.from_u64(v))
            .find(|a| !r.is_zero(a) && r.inverse(a).is_none());
        return Ok(IndicatorOutcome::UnitEta { non_unit });
    }
    let eta2 = r.mul(eta, eta);
    let minus_eta = r.neg(eta);
    for b in 1..=probe_bound as i64 {
        for beta in [r.from_i64(b), r.from_i64(-b)] {
            let step = r.mul(&eta2, &beta);
            if r.is_zero(&step) {
                continue;
            }
            let point = r.add(lambda, &step);
            if point == *lambda || !omega.contains(&point) {
                continue;
            }
            if r.divide_exact(&minus_eta, &step).is_none() {
                return Ok(IndicatorOutcome::NoDecomposition { beta, point });
            }
        }
    }
    Err(Error::Inconclusive(format!(
        "no admissible beta within {probe_bound}"
    )))
}

/// Evidence that `x^p` is a non-constant function with vanishing derivative.
#[derive(Debug, Clone)]
pub struct WildnessCertificate {
    pub expr: SmoothExpr,
    pub points: (RingElement, RingElement),
    pub values: (RingElement, RingElement),
    pub probes: Vec<RingElement>,
}

pub fn wildness_demo(ring: &Ring, probes: usize) -> Result<WildnessCertificate> {
    let p = ring.characteristic();
    if p == 0 {
        return Err(Error::Precondition(format!("{ring} has characteristic zero")));
    }
    let omega = Omega::whole(*ring);
    let expr = SmoothExpr::power(ring, &SmoothExpr::x(ring), p);
    let a = ring.generator().unwrap_or_else(|| ring.zero());
    let b = ring.add(&a, &ring.one());
    let values = (expr.eval(&omega, &a)?, expr.eval(&omega, &b)?);
    if values.0 == values.1 {
        return Err(Error::Inconclusive("x^p took equal values at both points".into()));
    }
    let mut used = vec![];
    for i in 0..probes {
        let Some(lambda) = omega.enumerate(i) else { break };
        let d = derivative_at(&omega, &expr, &lambda, 1)?;
        if !ring.is_zero(&d) {
            return Err(Error::Inconclusive(format!(
                "derivative {} at {}",
                ring.format_element(&d),
                ring.format_element(&lambda)
            )));
        }
        used.push(lambda);
    }
    Ok(WildnessCertificate { expr, points: (a, b), values, probes: used })
}

/// Whether derivatives of orders `1..=kmax` all vanish at `lambda`. A finite
/// probe, not a proof of tameness.
pub fn tameness_probe(omega: &Omega, y: &SmoothExpr, lambda: &RingElement, kmax: usize) -> Result<bool> {
    let r = omega.ring();
    for k in 1..=kmax {
        if !r.is_zero(&derivative_at(omega, y, lambda, k)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Formal derivative test for constancy of a polynomial in characteristic 0.
pub fn constancy_from_derivative(ring: &Ring, p: &Poly) -> Result<bool> {
    if ring.characteristic() != 0 {
        return Err(Error::Precondition(format!(
            "{ring} has positive characteristic"
        )));
    }
    Ok(poly::derivative(ring, p).is_empty())
}

/// The product series `sum a_i prod_{k<=i} (x - phi(k))^{f_k(i)}` over `omega`.
pub fn build_product_series(omega: &Omega, coeffs: CoeffSource, exps: ExponentFamily) -> Result<SmoothExpr> {
    Ok(SmoothExpr::series(ProductSeries::new(omega.clone(), coeffs, exps)?))
}
