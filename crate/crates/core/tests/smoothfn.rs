mod common;

use common::*;
use num_integer::Integer;
use proptest::prelude::*;
use rand::Rng;
use smoothring::smoothfn::{
    chain_rule_check, compose, constancy_from_derivative, decompose_at, derivative_at, expand_at,
    indicator_nonsmoothness_check, integrality_obstruction, jet_at, leibniz_check, poly,
    tameness_probe, wildness_demo, AbsorbingVerdict, CoeffSource, ExponentFamily, IndicatorOutcome, Jet,
    Omega, ProductSeries, SmoothExpr,
};
use smoothring::{Error, Ring};

fn sound_at(omega: &Omega, e: &SmoothExpr, lambda: i64, points: &[i64]) {
    let r = z();
    let lam = int(lambda);
    let (v, cof) = decompose_at(omega, e, &lam).unwrap();
    assert_eq!(v, e.eval(omega, &lam).unwrap());
    for &t in points {
        let t = int(t);
        if !omega.contains(&t) {
            continue;
        }
        let rhs = r.add(&v, &r.mul(&r.sub(&t, &lam), &cof.eval(omega, &t).unwrap()));
        assert_eq!(e.eval(omega, &t).unwrap(), rhs, "lambda {lambda}, t {:?}", t);
    }
}

#[test]
fn examples_from_the_definitions() {
    let om = Omega::whole(z());
    assert_eq!(int_poly(&[0, 0, 1]).eval(&om, &int(5)).unwrap(), int(25));
    let j = jet_at(&om, &SmoothExpr::constant(&z(), int(7)), &int(3), 4).unwrap();
    assert_eq!(j.coeffs(), ints(&[7, 0, 0, 0, 0]).as_slice());
    assert!(leibniz_check(&om, &int_poly(&[0, 1]), &int_poly(&[0, 1]), &int(2), 1).unwrap());
    assert!(leibniz_check(&om, &int_poly(&[0, 0, 1]), &int_poly(&[0, 0, 0, 1]), &int(5), 3).unwrap());
}

#[test]
fn product_series_examples() {
    let zz = Omega::whole(z());
    let ones = SmoothExpr::series(ProductSeries::new(zz.clone(), CoeffSource::Ones, ExponentFamily::Linear).unwrap());
    assert_eq!(ones.eval(&zz, &int(0)).unwrap(), int(0));
    let zero_family = ExponentFamily::Custom { name: "zero".into(), f: std::sync::Arc::new(|_, _| 0) };
    assert!(matches!(
        ProductSeries::new(zz.clone(), CoeffSource::Ones, zero_family),
        Err(Error::ExponentValidation { .. })
    ));
    // decomposition works at every enumerated base point of the horizon
    let pts: Vec<i64> = (-6..=6).collect();
    for lam in -4..=4 {
        sound_at(&zz, &ones, lam, &pts);
    }
}

#[test]
fn absorbing_examples() {
    assert_eq!(Omega::integers_without_zero().is_absorbing(16), AbsorbingVerdict::Verified);
    assert_eq!(Omega::whole(z()).is_absorbing(16), AbsorbingVerdict::Verified);
    let five = Omega::finite(z(), vec![int(5)]).unwrap();
    assert_eq!(five.is_absorbing(16), AbsorbingVerdict::Falsified { lambda: int(5), alpha: int(1) });
}

#[test]
fn indicator_examples() {
    let out = indicator_nonsmoothness_check(&Omega::whole(z()), &int(0), &int(2), 10).unwrap();
    assert!(out.is_nonsmooth());
    let out = indicator_nonsmoothness_check(&Omega::integers_without_zero(), &int(3), &int(5), 10).unwrap();
    assert!(out.is_nonsmooth());
    assert!(matches!(
        indicator_nonsmoothness_check(&Omega::whole(z()), &int(0), &int(1), 10).unwrap(),
        IndicatorOutcome::UnitEta { .. }
    ));
}

#[test]
fn wild_polynomial_over_fp_t() {
    let r = Ring::poly_over_prime(3).unwrap();
    let cert = wildness_demo(&r, 30).unwrap();
    assert_eq!(cert.probes.len(), 30);
    let om = Omega::whole(r);
    for p in &cert.probes {
        assert!(r.is_zero(&derivative_at(&om, &cert.expr, p, 1).unwrap()));
    }
}

#[test]
fn remainder_divisible_by_power() {
    // (t - l)^(N+1) | y(t) - sum a_n (t - l)^n, for polynomials and series
    let om = test_omega();
    let mut g = rng(7);
    for _ in 0..40 {
        let e = random_expr(&mut g, 2);
        let lam = *[-2i64, -1, 1, 2, 3].get(g.gen_range(0..5)).unwrap();
        let n = g.gen_range(0..4);
        let jet = jet_at(&om, &e, &int(lam), n).unwrap();
        for t in nonzero_points(-5, 5) {
            if t == int(lam) {
                continue;
            }
            let head = poly::eval(&z(), &jet.to_poly(), &t);
            let diff = big(&z().sub(&e.eval(&om, &t).unwrap(), &head));
            let d = num_traits::pow(big(&t) - lam, n + 1);
            assert!(diff.is_multiple_of(&d), "{e:?} at {lam}, order {n}");
        }
    }
}

#[test]
fn derivative_functions_have_integral_differences() {
    // lambda -> y^(k)(lambda) is itself smooth, so its difference quotients are integral
    let om = test_omega();
    let mut g = rng(11);
    for _ in 0..15 {
        let e = random_expr(&mut g, 1);
        for k in 1..=2 {
            let window = nonzero_points(-4, 4);
            let w = integrality_obstruction(&z(), &window, 1, |t| derivative_at(&om, &e, t, k)).unwrap();
            assert!(w.is_none(), "{e:?}, k = {k}: {w:?}");
        }
    }
}

#[test]
fn tameness_and_constancy_examples() {
    let om = Omega::whole(z());
    assert!(tameness_probe(&om, &int_poly(&[5]), &int(9), 10).unwrap());
    assert!(!tameness_probe(&om, &int_poly(&[0, 0, 1]), &int(0), 10).unwrap());
    assert!(constancy_from_derivative(&z(), &ints(&[3])).unwrap());
    assert!(!constancy_from_derivative(&z(), &ints(&[0, 1])).unwrap());
}

#[test]
fn jet_operation_errors() {
    let a = Jet::from_ints(z(), 1, &[1, 2]).unwrap();
    let b = Jet::from_ints(z(), 2, &[3, 2]).unwrap();
    assert!(matches!(a.add(&b), Err(Error::JetMismatch(_))));
    assert!(matches!(Jet::substitute(&a, &b), Err(Error::JetMismatch(_))));
    let om = Omega::whole(z());
    let bad = chain_rule_check(&Omega::integers_without_zero(), &int_poly(&[0, 1]), &om, &int_poly(&[0, 1]), &int(1), &ints(&[0]));
    assert!(matches!(bad, Err(Error::Composability(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_soundness(seed in any::<u64>(), lam in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3])) {
        let mut g = rng(seed);
        let e = random_expr(&mut g, 2);
        let pts: Vec<i64> = (-10..=10).filter(|&t| t != 0).take(20).collect();
        sound_at(&test_omega(), &e, lam, &pts);
    }

    #[test]
    fn jet_is_a_homomorphism(seed in any::<u64>(), lam in prop::sample::select(vec![-2i64, 1, 2]), n in 0usize..=6) {
        let om = test_omega();
        let r = z();
        let mut g = rng(seed);
        let (a, b) = (random_expr(&mut g, 1), random_expr(&mut g, 1));
        let (ja, jb) = (jet_at(&om, &a, &int(lam), n).unwrap(), jet_at(&om, &b, &int(lam), n).unwrap());
        let sum = jet_at(&om, &SmoothExpr::sum(&r, a.clone(), b.clone()), &int(lam), n).unwrap();
        let prod = jet_at(&om, &SmoothExpr::Mul(a.into(), b.into()), &int(lam), n).unwrap();
        prop_assert_eq!(sum, ja.add(&jb).unwrap());
        prop_assert_eq!(prod, ja.mul(&jb).unwrap());
    }

    #[test]
    fn polynomial_jets_match_formal_derivatives(
        coeffs in prop::collection::vec(-20i64..=20, 1..8),
        lam in -6i64..=6,
        n in 0usize..=8,
    ) {
        let om = Omega::whole(z());
        let e = int_poly(&coeffs);
        let p = ints(&coeffs);
        let jet = jet_at(&om, &e, &int(lam), n).unwrap();
        for k in 0..=n {
            let d = derivative_at(&om, &e, &int(lam), k).unwrap();
            prop_assert_eq!(&d, &z().mul(&z().factorial(k as u64), &jet.coeffs()[k]));
            prop_assert_eq!(d, formal_derivative(&p, k, &int(lam)));
        }
        // low-degree polynomials are reproduced exactly
        if coeffs.len() <= n + 1 {
            prop_assert_eq!(jet.to_poly(), poly::trim(&z(), p));
        }
    }

    #[test]
    fn leibniz_with_series(seed in any::<u64>(), lam in prop::sample::select(vec![-2i64, -1, 1, 2]), k in 0usize..=4) {
        let mut g = rng(seed);
        let (y, w) = (random_expr(&mut g, 1), random_expr(&mut g, 1));
        prop_assert!(leibniz_check(&test_omega(), &y, &w, &int(lam), k).unwrap());
    }

    #[test]
    fn chain_rule_for_polynomials(
        outer in prop::collection::vec(-5i64..=5, 1..5),
        inner in prop::collection::vec(-5i64..=5, 1..5),
        lam in -5i64..=5,
    ) {
        let om = Omega::whole(z());
        let (zo, yi) = (int_poly(&outer), int_poly(&inner));
        prop_assert!(chain_rule_check(&om, &zo, &om, &yi, &int(lam), &ints(&[-1, 0, 1])).unwrap());
        // oracle: formal derivative of the composite polynomial
        let comp = compose(&z(), &zo, &yi).unwrap();
        let formal = formal_derivative(&poly::compose(&z(), &ints(&outer), &ints(&inner)), 1, &int(lam));
        prop_assert_eq!(derivative_at(&om, &comp, &int(lam), 1).unwrap(), formal);
    }

    #[test]
    fn reciprocal_of_unit_jets(sign in prop::sample::select(vec![-1i64, 1]), rest in prop::collection::vec(-9i64..=9, 0..8)) {
        let mut coeffs = vec![sign];
        coeffs.extend(rest);
        let j = Jet::from_ints(z(), 0, &coeffs).unwrap();
        let inv = j.reciprocal().unwrap();
        let mut one = vec![0i64; coeffs.len()];
        one[0] = 1;
        prop_assert_eq!(j.mul(&inv).unwrap(), Jet::from_ints(z(), 0, &one).unwrap());
        if coeffs.len() > 1 {
            // (1/y)' = -y'/y^2 at the base point
            let r = z();
            let y0 = int(sign);
            let expected = r.neg(&r.mul(&int(coeffs[1]), &r.mul(&y0, &y0)));
            prop_assert_eq!(inv.coeffs()[1].clone(), expected);
        }
    }

    #[test]
    fn constancy_iff_zero_derivative(coeffs in prop::collection::vec(-3i64..=3, 0..6)) {
        let p = poly::trim(&z(), ints(&coeffs));
        prop_assert_eq!(constancy_from_derivative(&z(), &p).unwrap(), p.len() <= 1);
    }

    #[test]
    fn constructed_functions_have_no_obstruction(seed in any::<u64>()) {
        let mut g = rng(seed);
        let e = random_expr(&mut g, 1);
        let om = test_omega();
        let window = nonzero_points(-5, 5);
        prop_assert!(integrality_obstruction(&z(), &window, 2, |t| e.eval(&om, t)).unwrap().is_none());
    }

    #[test]
    fn block_expansion_matches_iterated_steps(seed in any::<u64>(), lam in prop::sample::select(vec![-1i64, 2])) {
        let om = test_omega();
        let mut g = rng(seed);
        let e = random_expr(&mut g, 1);
        let (block, _) = expand_at(&z(), &e, &int(lam), 3).unwrap();
        let mut rest = e.clone();
        for b in &block {
            let (v, c) = decompose_at(&om, &rest, &int(lam)).unwrap();
            prop_assert_eq!(&v, b);
            rest = c;
        }
    }
}

#[test]
fn substitution_matches_composition() {
    let om = Omega::whole(z());
    let outer = int_poly(&[1, -2, 0, 3]);
    let inner = int_poly(&[2, 1, 1]);
    let lam = int(1);
    let y0 = inner.eval(&om, &lam).unwrap();
    let jo = jet_at(&om, &outer, &y0, 4).unwrap();
    let ji = jet_at(&om, &inner, &lam, 4).unwrap();
    let comp = compose(&z(), &outer, &inner).unwrap();
    assert_eq!(Jet::substitute(&jo, &ji).unwrap(), jet_at(&om, &comp, &lam, 4).unwrap());
}
