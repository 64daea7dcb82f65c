#![allow(dead_code)]

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smoothring::smoothfn::{poly, CoeffSource, ExponentFamily, Omega, ProductSeries, SmoothExpr};
use smoothring::{Ring, RingElement};

pub fn z() -> Ring {
    Ring::integers()
}

pub fn int(v: i64) -> RingElement {
    z().from_i64(v)
}

pub fn ints(v: &[i64]) -> Vec<RingElement> {
    v.iter().map(|&c| int(c)).collect()
}

pub fn big(e: &RingElement) -> BigInt {
    z().as_integer(e).expect("integer").clone()
}

pub fn int_poly(coeffs: &[i64]) -> SmoothExpr {
    SmoothExpr::poly(&z(), ints(coeffs))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_coeffs(rng: &mut impl Rng, max_deg: usize, bound: i64) -> Vec<i64> {
    let deg = rng.gen_range(0..=max_deg);
    (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect()
}

pub fn random_poly(rng: &mut impl Rng, max_deg: usize, bound: i64) -> SmoothExpr {
    int_poly(&random_coeffs(rng, max_deg, bound))
}

/// Series atom over `Z` or `Z \ {0}` with a cheap exponent family.
pub fn random_series(rng: &mut impl Rng) -> SmoothExpr {
    let omega = if rng.gen_bool(0.5) { Omega::whole(z()) } else { Omega::integers_without_zero() };
    let coeffs = match rng.gen_range(0..5) {
        0 => CoeffSource::Ones,
        1 => CoeffSource::Alternating,
        2 => CoeffSource::Index,
        3 => CoeffSource::Constant(int(rng.gen_range(-3..=3))),
        _ => CoeffSource::List(ints(&random_coeffs(rng, 5, 4))),
    };
    let exps = match rng.gen_range(0..4) {
        0 => ExponentFamily::Linear,
        1 => ExponentFamily::Half,
        2 => ExponentFamily::Lag,
        _ => ExponentFamily::Affine { a: rng.gen_range(1..=2), b: rng.gen_range(0..=1) },
    };
    SmoothExpr::series(ProductSeries::new(omega, coeffs, exps).expect("valid family"))
}

/// Expressions from the smart constructors, with series leaves.
pub fn random_expr(rng: &mut impl Rng, depth: usize) -> SmoothExpr {
    let r = z();
    if depth == 0 {
        return if rng.gen_bool(0.4) { random_series(rng) } else { random_poly(rng, 3, 5) };
    }
    match rng.gen_range(0..4) {
        0 => SmoothExpr::sum(&r, random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
        1 => SmoothExpr::product(&r, random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
        2 => SmoothExpr::scaled(&r, int(rng.gen_range(-4..=4)), random_expr(rng, depth - 1)),
        _ => random_expr(rng, 0),
    }
}

/// Domain on which every generated expression is defined.
pub fn test_omega() -> Omega {
    Omega::integers_without_zero()
}

pub fn nonzero_points(lo: i64, hi: i64) -> Vec<RingElement> {
    (lo..=hi).filter(|&t| t != 0).map(int).collect()
}

/// `k`-th formal derivative evaluated at `lambda`.
pub fn formal_derivative(coeffs: &[RingElement], k: usize, lambda: &RingElement) -> RingElement {
    let r = z();
    let mut p = coeffs.to_vec();
    for _ in 0..k {
        p = poly::derivative(&r, &p);
    }
    poly::eval(&r, &p, lambda)
}
