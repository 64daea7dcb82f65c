//! The expression class of smooth functions: constants, `x`, polynomials,
//! product-series atoms, sums, products and scalings.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::omega::Omega;
use super::poly::{self, Poly};
use crate::error::{Error, Result};
use crate::rings::{Ring, RingElement};

/// Largest product of term counts for which `poly * poly` is expanded.
const COLLAPSE_LIMIT: usize = 1 << 16;

#[derive(Clone)]
pub enum SmoothExpr {
    Const(RingElement),
    X,
    Poly(Arc<Poly>),
    Series(Arc<ProductSeries>),
    Add(Arc<SmoothExpr>, Arc<SmoothExpr>),
    Mul(Arc<SmoothExpr>, Arc<SmoothExpr>),
    Scale(RingElement, Arc<SmoothExpr>),
}

impl fmt::Debug for SmoothExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmoothExpr::Const(c) => write!(f, "Const({c:?})"),
            SmoothExpr::X => write!(f, "X"),
            SmoothExpr::Poly(p) => write!(f, "Poly({p:?})"),
            SmoothExpr::Series(s) => write!(f, "Series({s:?})"),
            SmoothExpr::Add(a, b) => write!(f, "Add({a:?}, {b:?})"),
            SmoothExpr::Mul(a, b) => write!(f, "Mul({a:?}, {b:?})"),
            SmoothExpr::Scale(c, a) => write!(f, "Scale({c:?}, {a:?})"),
        }
    }
}

impl SmoothExpr {
    pub fn zero() -> Self {
        SmoothExpr::Poly(Arc::new(vec![]))
    }

    pub fn constant(ring: &Ring, c: RingElement) -> Self {
        SmoothExpr::Poly(Arc::new(poly::constant(ring, c)))
    }

    pub fn x(ring: &Ring) -> Self {
        SmoothExpr::Poly(Arc::new(vec![ring.zero(), ring.one()]))
    }

    pub fn poly(ring: &Ring, coeffs: Poly) -> Self {
        SmoothExpr::Poly(Arc::new(poly::trim(ring, coeffs)))
    }

    pub fn series(s: ProductSeries) -> Self {
        SmoothExpr::Series(Arc::new(s))
    }

    /// Coefficients, if the expression is syntactically a polynomial atom.
    pub fn as_poly(&self, ring: &Ring) -> Option<Poly> {
        match self {
            SmoothExpr::Const(c) => Some(poly::constant(ring, c.clone())),
            SmoothExpr::X => Some(vec![ring.zero(), ring.one()]),
            SmoothExpr::Poly(p) => Some(p.as_ref().clone()),
            _ => None,
        }
    }

    pub fn is_zero(&self, ring: &Ring) -> bool {
        match self {
            SmoothExpr::Const(c) => ring.is_zero(c),
            SmoothExpr::Poly(p) => p.is_empty(),
            _ => false,
        }
    }

    /// Sum, merging polynomial atoms and dropping zeros.
    pub fn sum(ring: &Ring, a: SmoothExpr, b: SmoothExpr) -> SmoothExpr {
        if a.is_zero(ring) {
            return b;
        }
        if b.is_zero(ring) {
            return a;
        }
        match (a.as_poly(ring), b.as_poly(ring)) {
            (Some(p), Some(q)) => return SmoothExpr::Poly(Arc::new(poly::add(ring, &p, &q))),
            // keep polynomial parts gathered at the left of a sum
            (Some(p), None) => {
                if let SmoothExpr::Add(l, r) = &b {
                    if let Some(q) = l.as_poly(ring) {
                        let head = SmoothExpr::poly(ring, poly::add(ring, &p, &q));
                        return SmoothExpr::sum(ring, head, r.as_ref().clone());
                    }
                }
            }
            (None, Some(_)) => return SmoothExpr::sum(ring, b, a),
            (None, None) => {}
        }
        SmoothExpr::Add(Arc::new(a), Arc::new(b))
    }

    /// Product, expanding small polynomial products and turning constant
    /// factors into scalings.
    pub fn product(ring: &Ring, a: SmoothExpr, b: SmoothExpr) -> SmoothExpr {
        if a.is_zero(ring) || b.is_zero(ring) {
            return SmoothExpr::zero();
        }
        let pa = a.as_poly(ring);
        let pb = b.as_poly(ring);
        if let Some(p) = &pa {
            if p.len() == 1 {
                return SmoothExpr::scaled(ring, p[0].clone(), b);
            }
        }
        if let Some(q) = &pb {
            if q.len() == 1 {
                return SmoothExpr::scaled(ring, q[0].clone(), a);
            }
        }
        if let (Some(p), Some(q)) = (&pa, &pb) {
            if p.len() * q.len() <= COLLAPSE_LIMIT {
                return SmoothExpr::Poly(Arc::new(poly::mul(ring, p, q)));
            }
        }
        SmoothExpr::Mul(Arc::new(a), Arc::new(b))
    }

    pub fn scaled(ring: &Ring, c: RingElement, a: SmoothExpr) -> SmoothExpr {
        if ring.is_zero(&c) || a.is_zero(ring) {
            return SmoothExpr::zero();
        }
        if ring.is_one(&c) {
            return a;
        }
        if let Some(p) = a.as_poly(ring) {
            return SmoothExpr::Poly(Arc::new(poly::scale(ring, &c, &p)));
        }
        if let SmoothExpr::Scale(d, inner) = &a {
            return SmoothExpr::scaled(ring, ring.mul(&c, d), inner.as_ref().clone());
        }
        SmoothExpr::Scale(c, Arc::new(a))
    }

    pub fn neg(ring: &Ring, a: SmoothExpr) -> SmoothExpr {
        SmoothExpr::scaled(ring, ring.neg(&ring.one()), a)
    }

    pub fn difference(ring: &Ring, a: SmoothExpr, b: SmoothExpr) -> SmoothExpr {
        SmoothExpr::sum(ring, a, SmoothExpr::neg(ring, b))
    }

    pub fn power(ring: &Ring, a: &SmoothExpr, e: u64) -> SmoothExpr {
        if let Some(p) = a.as_poly(ring) {
            return SmoothExpr::poly(ring, poly::pow(ring, &p, e));
        }
        (0..e).fold(SmoothExpr::constant(ring, ring.one()), |acc, _| {
            SmoothExpr::product(ring, acc, a.clone())
        })
    }

    /// Value at `t`, checking `t` against `omega`.
    pub fn eval(&self, omega: &Omega, t: &RingElement) -> Result<RingElement> {
        omega.check(t)?;
        self.eval_in(omega.ring(), t)
    }

    /// Value at `t` without a domain check on the outer expression; series
    /// atoms still check their own domain.
    pub fn eval_in(&self, ring: &Ring, t: &RingElement) -> Result<RingElement> {
        Ok(match self {
            SmoothExpr::Const(c) => c.clone(),
            SmoothExpr::X => t.clone(),
            SmoothExpr::Poly(p) => poly::eval(ring, p, t),
            SmoothExpr::Series(s) => s.eval(t)?,
            SmoothExpr::Add(a, b) => ring.add(&a.eval_in(ring, t)?, &b.eval_in(ring, t)?),
            SmoothExpr::Mul(a, b) => {
                let va = a.eval_in(ring, t)?;
                if ring.is_zero(&va) {
                    return Ok(va);
                }
                ring.mul(&va, &b.eval_in(ring, t)?)
            }
            SmoothExpr::Scale(c, a) => ring.mul(c, &a.eval_in(ring, t)?),
        })
    }

    /// Whether the expression contains a series atom.
    pub fn has_series(&self) -> bool {
        match self {
            SmoothExpr::Series(_) => true,
            SmoothExpr::Add(a, b) | SmoothExpr::Mul(a, b) => a.has_series() || b.has_series(),
            SmoothExpr::Scale(_, a) => a.has_series(),
            _ => false,
        }
    }

    /// Node count, for diagnostics.
    pub fn size(&self) -> usize {
        match self {
            SmoothExpr::Add(a, b) | SmoothExpr::Mul(a, b) => 1 + a.size() + b.size(),
            SmoothExpr::Scale(_, a) => 1 + a.size(),
            _ => 1,
        }
    }
}

type CoeffFn = dyn Fn(&Ring, usize) -> SmoothExpr + Send + Sync;
type ExpFn = dyn Fn(usize, usize) -> u64 + Send + Sync;

/// The coefficient sequence `a_i` of a product series.
#[derive(Clone)]
pub enum CoeffSource {
    /// `a_i = 1`.
    Ones,
    /// `a_i = (-1)^i`.
    Alternating,
    /// `a_i = i`.
    Index,
    Constant(RingElement),
    /// Listed values, zero afterwards.
    List(Vec<RingElement>),
    /// Named coefficient generator; coefficients may be polynomial expressions.
    Custom { name: String, f: Arc<CoeffFn> },
}

impl CoeffSource {
    pub fn coefficient(&self, ring: &Ring, i: usize) -> SmoothExpr {
        let c = match self {
            CoeffSource::Ones => ring.one(),
            CoeffSource::Alternating => ring.from_i64(if i.is_multiple_of(2) { 1 } else { -1 }),
            CoeffSource::Index => ring.from_u64(i as u64),
            CoeffSource::Constant(c) => c.clone(),
            CoeffSource::List(v) => v.get(i).cloned().unwrap_or_else(|| ring.zero()),
            CoeffSource::Custom { f, .. } => return f(ring, i),
        };
        SmoothExpr::constant(ring, c)
    }

    pub fn name(&self, ring: &Ring) -> String {
        match self {
            CoeffSource::Ones => "ones".into(),
            CoeffSource::Alternating => "alternating".into(),
            CoeffSource::Index => "index".into(),
            CoeffSource::Constant(c) => format!("const({})", ring.format_element(c)),
            CoeffSource::List(v) => format!(
                "list({})",
                v.iter().map(|c| ring.format_element(c)).collect::<Vec<_>>().join(";")
            ),
            CoeffSource::Custom { name, .. } => name.clone(),
        }
    }
}

impl fmt::Debug for CoeffSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffSource::Custom { name, .. } => write!(f, "Custom({name})"),
            CoeffSource::Ones => write!(f, "Ones"),
            CoeffSource::Alternating => write!(f, "Alternating"),
            CoeffSource::Index => write!(f, "Index"),
            CoeffSource::Constant(c) => write!(f, "Constant({c:?})"),
            CoeffSource::List(v) => write!(f, "List({v:?})"),
        }
    }
}

/// Exponents `f_k(i)` of the factor `(x - phi(k))` in term `i`.
#[derive(Clone)]
pub enum ExponentFamily {
    /// `i + 1`.
    Linear,
    /// `ceil((i + 1) / 2)`.
    Half,
    /// `i^2 + 1`.
    Square,
    /// `i - k`, saturating at zero.
    Lag,
    /// `a i + b`.
    Affine { a: u64, b: u64 },
    Custom { name: String, f: Arc<ExpFn> },
}

impl ExponentFamily {
    pub fn exponent(&self, k: usize, i: usize) -> u64 {
        let i64_ = i as u64;
        match self {
            ExponentFamily::Linear => i64_ + 1,
            ExponentFamily::Half => (i64_ + 2) / 2,
            ExponentFamily::Square => i64_ * i64_ + 1,
            ExponentFamily::Lag => i64_.saturating_sub(k as u64),
            ExponentFamily::Affine { a, b } => a * i64_ + b,
            ExponentFamily::Custom { f, .. } => f(k, i),
        }
    }

    pub fn name(&self) -> String {
        match self {
            ExponentFamily::Linear => "linear".into(),
            ExponentFamily::Half => "half".into(),
            ExponentFamily::Square => "square".into(),
            ExponentFamily::Lag => "lag".into(),
            ExponentFamily::Affine { a, b } => format!("affine({a};{b})"),
            ExponentFamily::Custom { name, .. } => name.clone(),
        }
    }

    /// Probe monotonicity and growth for `k < probe_k`, `i <= horizon`.
    pub fn validate(&self, probe_k: usize, horizon: usize) -> Result<()> {
        for k in 0..probe_k {
            for i in 0..horizon {
                if self.exponent(k, i + 1) < self.exponent(k, i) {
                    return Err(Error::ExponentValidation {
                        k,
                        i: i + 1,
                        reason: "decreasing".into(),
                    });
                }
            }
            let (lo, hi) = (self.exponent(k, 0), self.exponent(k, horizon));
            if hi <= lo || hi == 0 {
                return Err(Error::ExponentValidation {
                    k,
                    i: horizon,
                    reason: format!("not unbounded: f({horizon}) = {hi}, f(0) = {lo}"),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExponentFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

pub const VALIDATION_PROBE_K: usize = 8;
pub const VALIDATION_HORIZON: usize = 64;
/// Longest run of terms scanned for the vanishing tail.
pub const SERIES_SEARCH_CAP: usize = 1_000_000;

/// `sum_{i >= start} a_i prod_{k=0}^{i} (x - phi(k))^{f_k(i) - d_k}`, where
/// `phi` is the standard enumeration of `omega` and `d_k` are decrements
/// accumulated by decomposition.
#[derive(Clone, Debug)]
pub struct ProductSeries {
    omega: Omega,
    coeffs: CoeffSource,
    exponents: ExponentFamily,
    start: usize,
    decrements: BTreeMap<usize, u64>,
}

impl ProductSeries {
    pub fn new(omega: Omega, coeffs: CoeffSource, exponents: ExponentFamily) -> Result<Self> {
        if !omega.is_infinite() {
            return Err(Error::Precondition(format!(
                "a product series needs an infinite domain, got {omega}"
            )));
        }
        exponents.validate(VALIDATION_PROBE_K, VALIDATION_HORIZON)?;
        Ok(ProductSeries {
            omega,
            coeffs,
            exponents,
            start: 0,
            decrements: BTreeMap::new(),
        })
    }

    /// Restore a decomposed tail; decrements must keep every used exponent
    /// non-negative.
    pub fn with_tail(mut self, start: usize, decrements: BTreeMap<usize, u64>) -> Result<Self> {
        for (&k, &d) in &decrements {
            let first = start.max(k);
            if self.exponents.exponent(k, first) < d {
                return Err(Error::ExponentValidation {
                    k,
                    i: first,
                    reason: format!("decrement {d} exceeds the exponent"),
                });
            }
        }
        self.start = start;
        self.decrements = decrements.into_iter().filter(|&(_, d)| d > 0).collect();
        Ok(self)
    }

    pub fn omega(&self) -> &Omega {
        &self.omega
    }

    pub fn ring(&self) -> &Ring {
        self.omega.ring()
    }

    pub fn coeffs(&self) -> &CoeffSource {
        &self.coeffs
    }

    pub fn exponents(&self) -> &ExponentFamily {
        &self.exponents
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn decrements(&self) -> &BTreeMap<usize, u64> {
        &self.decrements
    }

    pub fn effective_exponent(&self, k: usize, i: usize) -> u64 {
        self.exponents.exponent(k, i) - self.decrements.get(&k).copied().unwrap_or(0)
    }

    pub fn phi(&self, k: usize) -> RingElement {
        self.omega.enumerate(k).expect("infinite domain")
    }

    /// Least `i >= max(start, m)` whose factor at `phi(m)` has positive
    /// exponent; every term from there on vanishes at `phi(m)`.
    pub fn vanishing_index(&self, m: usize) -> Result<usize> {
        let from = self.start.max(m);
        (from..from + SERIES_SEARCH_CAP)
            .find(|&i| self.effective_exponent(m, i) >= 1)
            .ok_or(Error::SeriesTruncation(from + SERIES_SEARCH_CAP))
    }

    pub fn coefficient(&self, i: usize) -> SmoothExpr {
        self.coeffs.coefficient(self.ring(), i)
    }

    /// Term `i` as an expression (coefficient times an expanded polynomial).
    pub fn term(&self, i: usize) -> SmoothExpr {
        let ring = *self.ring();
        let a = self.coefficient(i);
        if a.is_zero(&ring) {
            return SmoothExpr::zero();
        }
        let mut factors = poly::constant(&ring, ring.one());
        for k in 0..=i {
            let e = self.effective_exponent(k, i);
            if e > 0 {
                let lin = poly::linear(&ring, &self.phi(k));
                factors = poly::mul(&ring, &factors, &poly::pow(&ring, &lin, e));
            }
        }
        SmoothExpr::product(&ring, a, SmoothExpr::poly(&ring, factors))
    }

    pub fn eval(&self, t: &RingElement) -> Result<RingElement> {
        self.omega.check(t)?;
        let ring = *self.ring();
        let m = self.omega.index_of(t).expect("member has an index");
        let h = self.vanishing_index(m)?;
        let phis: Vec<RingElement> = (0..h).map(|k| self.phi(k)).collect();
        let mut acc = ring.zero();
        for i in self.start..h {
            let a = self.coefficient(i);
            if a.is_zero(&ring) {
                continue;
            }
            let mut term = ring.one();
            for (k, phi) in phis.iter().enumerate().take(i + 1) {
                let e = self.effective_exponent(k, i);
                if e > 0 {
                    term = ring.mul(&term, &ring.pow(&ring.sub(t, phi), e));
                }
            }
            if !ring.is_zero(&term) {
                term = ring.mul(&term, &a.eval_in(&ring, t)?);
            }
            acc = ring.add(&acc, &term);
        }
        Ok(acc)
    }

    /// `self = value + (x - phi(n)) * cofactor`: polynomial head below the
    /// vanishing index plus the tail with the exponent at `n` lowered by one.
    pub fn decompose(&self, lambda: &RingElement) -> Result<(RingElement, SmoothExpr)> {
        self.omega.check(lambda)?;
        let ring = *self.ring();
        let n = self.omega.index_of(lambda).expect("member has an index");
        let h = self.vanishing_index(n)?;
        let mut value = ring.zero();
        let mut cofactor = SmoothExpr::zero();
        for i in self.start..h {
            let term = self.term(i);
            if term.is_zero(&ring) {
                continue;
            }
            let (v, c) = super::calculus::decompose_at_unchecked(&ring, &term, lambda)?;
            value = ring.add(&value, &v);
            cofactor = SmoothExpr::sum(&ring, cofactor, c);
        }
        let mut decrements = self.decrements.clone();
        *decrements.entry(n).or_insert(0) += 1;
        let tail = ProductSeries {
            start: h,
            decrements,
            ..self.clone()
        };
        Ok((value, SmoothExpr::sum(&ring, cofactor, SmoothExpr::series(tail))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::integers()
    }

    #[test]
    fn smart_constructors_normalise() {
        let r = z();
        let x = SmoothExpr::x(&r);
        let s = SmoothExpr::sum(&r, x.clone(), SmoothExpr::constant(&r, r.from_i64(2)));
        assert_eq!(s.as_poly(&r), Some(vec![r.from_i64(2), r.one()]));
        let p = SmoothExpr::product(&r, s.clone(), x.clone());
        assert_eq!(p.as_poly(&r).map(|v| v.len()), Some(3));
        assert!(SmoothExpr::product(&r, SmoothExpr::zero(), s.clone()).is_zero(&r));
        let ser = SmoothExpr::series(
            ProductSeries::new(Omega::whole(r), CoeffSource::Ones, ExponentFamily::Linear).unwrap(),
        );
        let sc = SmoothExpr::product(&r, SmoothExpr::constant(&r, r.from_i64(3)), ser.clone());
        assert!(matches!(sc, SmoothExpr::Scale(..)));
        let sc2 = SmoothExpr::scaled(&r, r.from_i64(2), sc);
        match sc2 {
            SmoothExpr::Scale(c, _) => assert_eq!(c, r.from_i64(6)),
            _ => panic!(),
        }
    }

    #[test]
    fn exponent_validation() {
        assert!(ExponentFamily::Linear.validate(8, 64).is_ok());
        assert!(ExponentFamily::Half.validate(8, 64).is_ok());
        assert!(ExponentFamily::Lag.validate(8, 64).is_ok());
        assert!(ExponentFamily::Affine { a: 0, b: 0 }.validate(8, 64).is_err());
        assert!(ExponentFamily::Affine { a: 0, b: 3 }.validate(8, 64).is_err());
        let wobble = ExponentFamily::Custom {
            name: "wobble".into(),
            f: Arc::new(|_, i| if i == 5 { 0 } else { i as u64 + 1 }),
        };
        assert!(matches!(
            wobble.validate(8, 64),
            Err(Error::ExponentValidation { i: 5, .. })
        ));
    }

    #[test]
    fn ones_series_vanishes_at_zero() {
        let r = z();
        let s = ProductSeries::new(Omega::whole(r), CoeffSource::Ones, ExponentFamily::Linear).unwrap();
        assert_eq!(s.eval(&r.zero()).unwrap(), r.zero());
        // At t = 1 (index 1) only term 0 survives: (1 - 0)^1.
        assert_eq!(s.eval(&r.one()).unwrap(), r.one());
        // At t = -1 (index 2): term 0 = -1, term 1 = (-1)^2 (-2)^2 = 4.
        assert_eq!(s.eval(&r.from_i64(-1)).unwrap(), r.from_i64(3));
    }

    #[test]
    fn series_rejects_finite_domains() {
        let r = Ring::modular(5).unwrap();
        assert!(ProductSeries::new(Omega::whole(r), CoeffSource::Ones, ExponentFamily::Linear).is_err());
    }
}
