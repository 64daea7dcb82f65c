//! The same function written as a product series over `Z \ {0}`, so the
//! generic smooth-function machinery can evaluate and decompose it.
//!
//! With the enumeration `1, -1, 2, -2, ...` and exponents `ceil((i+1)/2)`,
//! term `2n+1` carries `prod_{k<=n+1} (x^2 - k^2)^{n+1}`. Since
//! `k^E - x^E = -(x^2 - k^2) Q_k` with `Q_k = sum_j k^{2j} x^{E-2-2j}`, the
//! coefficient of that term is `(-1)^{n+1} c_n prod_k Q_k^{n+1}`; even terms
//! have coefficient zero.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::One;

use super::{coefficient, factor_exponent, max_digits_from_env};
use crate::error::{Error, Result};
use crate::rings::{Ring, RingElement};
use crate::smoothfn::{poly, CoeffSource, ExponentFamily, Omega, ProductSeries, SmoothExpr};

pub const Z82_NAME: &str = "z82";

pub fn z82_omega() -> Omega {
    Omega::integers_without_zero()
}

fn q_poly(ring: &Ring, k: u64, e: u64) -> Vec<RingElement> {
    let mut coeffs = vec![ring.zero(); (e - 1) as usize];
    let k2 = BigInt::from(k * k);
    let mut power = BigInt::one();
    for j in 0..e / 2 {
        coeffs[(e - 2 - 2 * j) as usize] = RingElement::Int(power.clone());
        power *= &k2;
    }
    poly::trim(ring, coeffs)
}

fn raw_product(a: SmoothExpr, b: SmoothExpr) -> SmoothExpr {
    SmoothExpr::Mul(Arc::new(a), Arc::new(b))
}

fn odd_coefficient(ring: &Ring, n: usize) -> SmoothExpr {
    let e = factor_exponent(n);
    let c = coefficient(n, max_digits_from_env()).expect("coefficient within the digit cap");
    let c = if n.is_multiple_of(2) { -c } else { c };
    let mut body: Option<SmoothExpr> = None;
    for k in 1..=(n as u64 + 1) {
        let q = SmoothExpr::poly(ring, q_poly(ring, k, e));
        if q.as_poly(ring).map(|p| p.len() == 1 && ring.is_one(&p[0])).unwrap_or(false) {
            continue;
        }
        for _ in 0..=n {
            body = Some(match body {
                None => q.clone(),
                Some(b) => raw_product(b, q.clone()),
            });
        }
    }
    let body = body.unwrap_or_else(|| SmoothExpr::constant(ring, ring.one()));
    SmoothExpr::scaled(ring, RingElement::Int(c), body)
}

/// `z` as a product series on `Z \ {0}`.
pub fn z82_series() -> SmoothExpr {
    let cache: Arc<Mutex<HashMap<usize, SmoothExpr>>> = Arc::default();
    let coeffs = CoeffSource::Custom {
        name: Z82_NAME.into(),
        f: Arc::new(move |ring: &Ring, i: usize| {
            if i.is_multiple_of(2) {
                return SmoothExpr::zero();
            }
            let n = i / 2;
            if let Some(c) = cache.lock().expect("cache lock").get(&n) {
                return c.clone();
            }
            let c = odd_coefficient(ring, n);
            cache.lock().expect("cache lock").insert(n, c.clone());
            c
        }),
    };
    SmoothExpr::series(
        ProductSeries::new(z82_omega(), coeffs, ExponentFamily::Half).expect("half exponents are valid"),
    )
}

/// Largest partial sum that is still expanded as a polynomial.
pub const MAX_EXPANDED_PARTIAL: usize = 4;

/// `I_len = sum_{n < len} T_n` as an expanded polynomial over `Z`.
pub fn partial_sum_expr(len: usize) -> Result<SmoothExpr> {
    if len > MAX_EXPANDED_PARTIAL {
        return Err(Error::DepthExceeded { requested: len, max: MAX_EXPANDED_PARTIAL });
    }
    let z = Ring::integers();
    let mut acc: Vec<RingElement> = vec![];
    for n in 0..len {
        let e = factor_exponent(n);
        let mut block = poly::constant(&z, z.one());
        for k in 1..=(n as u64 + 1) {
            let mut f = vec![z.zero(); e as usize + 1];
            f[0] = RingElement::Int(num_traits::pow(BigInt::from(k), e as usize));
            f[e as usize] = z.from_i64(-1);
            block = poly::mul(&z, &block, &f);
        }
        let term = poly::pow(&z, &block, n as u64 + 1);
        let c = RingElement::Int(coefficient(n, max_digits_from_env())?);
        acc = poly::add(&z, &acc, &poly::scale(&z, &c, &term));
    }
    Ok(SmoothExpr::poly(&z, acc))
}
