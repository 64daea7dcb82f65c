use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use smoothring::smoothfn::{decompose_at, jet_at, poly};
use smoothring::witness::{
    factor_exponent, kappa, omega, partial_sum_expr, partial_sum_value, term_value, verify_analyticity_step,
    verify_nonextension, z82_eval, z82_omega, z82_series, WitnessConfig, DEFAULT_MAX_DIGITS,
};
use smoothring::{Error, Ring, RingElement};

fn b(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Independent hand expansion of the two surviving terms at |t| = 3.
fn two_terms(t: i64) -> BigInt {
    let t = b(t);
    let t2 = &t * &t;
    let t4 = &t2 * &t2;
    let term0 = BigInt::one() - &t2;
    let f1 = BigInt::one() - &t4;
    let f2 = b(16) - &t4;
    term0 + b(2) * &f1 * &f1 * &f2 * &f2
}

#[test]
fn printed_values() {
    let cfg = WitnessConfig::default();
    assert_eq!(z82_eval(&b(2), &cfg).unwrap(), b(-3));
    assert_eq!(z82_eval(&b(1), &cfg).unwrap(), BigInt::zero());
    assert_eq!(z82_eval(&b(-1), &cfg).unwrap(), BigInt::zero());
    assert_eq!(z82_eval(&b(3), &cfg).unwrap(), two_terms(3));
    assert_eq!(two_terms(3), b(54_079_992));
    assert!(matches!(z82_eval(&b(0), &cfg), Err(Error::Domain { .. })));
}

#[test]
fn closed_form_agrees_with_series() {
    let z = Ring::integers();
    let cfg = WitnessConfig::default();
    let series = z82_series();
    let om = z82_omega();
    for t in (-6i64..=6).filter(|&t| t != 0) {
        let direct = z82_eval(&b(t), &cfg).unwrap();
        assert_eq!(series.eval(&om, &z.from_i64(t)).unwrap(), RingElement::Int(direct), "t = {t}");
    }
}

#[test]
fn terms_vanish_at_their_factor_bases() {
    for n in 0..=4usize {
        for m in 1..=(n as i64 + 1) {
            assert!(term_value(n, &b(m), DEFAULT_MAX_DIGITS).unwrap().is_zero());
            assert!(term_value(n, &b(-m), DEFAULT_MAX_DIGITS).unwrap().is_zero());
        }
        assert!(!term_value(n, &b(n as i64 + 2), DEFAULT_MAX_DIGITS).unwrap().is_zero());
    }
}

#[test]
fn omega_chain() {
    let w: Vec<BigInt> = (2..=5).map(|n| omega(n, DEFAULT_MAX_DIGITS).unwrap()).collect();
    assert_eq!(w[0], b(513));
    assert_eq!(w[0], BigInt::one() + b(2) * num_traits::pow(b(2), 8));
    assert_eq!(w[1], b(513) * (BigInt::one() + b(2) * num_traits::pow(b(6), 54)));
    assert!(w.windows(2).all(|p| p[0] < p[1]));
    assert!(w.iter().all(|x| x.is_odd()));
    // recomputation is reproducible
    assert_eq!(omega(4, DEFAULT_MAX_DIGITS).unwrap(), w[2]);
    assert_eq!(kappa(2, DEFAULT_MAX_DIGITS).unwrap(), b(513));
}

#[test]
fn partial_sums() {
    let cfg = WitnessConfig::default();
    let z = Ring::integers();
    assert_eq!(partial_sum_value(2, &BigInt::zero(), &cfg).unwrap(), b(513));
    assert!(partial_sum_value(2, &BigInt::one(), &cfg).unwrap().is_zero());
    let i4 = partial_sum_value(4, &BigInt::zero(), &cfg).unwrap();
    assert!(i4.is_multiple_of(&omega(3, DEFAULT_MAX_DIGITS).unwrap()));
    // expanded polynomial agrees with the closed form
    let e = partial_sum_expr(3).unwrap();
    let p = e.as_poly(&z).unwrap();
    for t in -4i64..=4 {
        let v = poly::eval(&z, &p, &z.from_i64(t));
        assert_eq!(v, RingElement::Int(partial_sum_value(3, &b(t), &cfg).unwrap()));
    }
    assert!(partial_sum_expr(5).is_err());
}

#[test]
fn nonextension_report() {
    let report = verify_nonextension(&WitnessConfig::default()).unwrap();
    assert!(report.verdict);
    assert_eq!(report.steps.len(), 2);
    for s in &report.steps {
        assert!(s.passed);
        assert_eq!(s.residues.partial_at_zero, "0");
        assert!(s.residues.eval_at_omega.iter().all(|r| r == "0"));
    }
    assert_eq!(report.parity.extension_at_zero_mod_2, "1");
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["steps"][0]["omega"], "513");
    assert!(json["steps"][0]["checks"]["eval_at_omega"].as_bool().unwrap());
}

#[test]
fn decomposition_at_two() {
    let z = Ring::integers();
    let om = z82_omega();
    let s = z82_series();
    let (v, cof) = decompose_at(&om, &s, &z.from_i64(2)).unwrap();
    assert_eq!(v, z.from_i64(-3));
    for t in [1i64, 3, 4, -1, -3] {
        let t = z.from_i64(t);
        let rhs = z.add(&v, &z.mul(&z.sub(&t, &z.from_i64(2)), &cof.eval(&om, &t).unwrap()));
        assert_eq!(s.eval(&om, &t).unwrap(), rhs);
    }
    // jet remainder divisible by (t - 2)^3
    let jet = jet_at(&om, &s, &z.from_i64(2), 2).unwrap();
    for t in [1i64, 3, 4] {
        let head = poly::eval(&z, &jet.to_poly(), &z.from_i64(t));
        let diff = z82_eval(&b(t), &WitnessConfig::default()).unwrap() - z.as_integer(&head).unwrap();
        assert!(diff.is_multiple_of(&num_traits::pow(b(t - 2), 3)));
    }
    assert_eq!(factor_exponent(1), 4);
}

#[test]
fn analyticity_examples() {
    assert!(verify_analyticity_step(&b(0), &b(2), 3, &b(24)).unwrap());
    assert!(!verify_analyticity_step(&b(0), &b(2), 5, &b(24)).unwrap());
    assert!(matches!(verify_analyticity_step(&b(0), &b(-1), 1, &b(5)), Err(Error::Precondition(_))));
}

proptest! {
    #[test]
    fn cubes_times_anything(g in prop::collection::vec(-50i64..=50, 1..6)) {
        // f = x^3 g vanishes to order 3 at 0, so 8 | f(2)
        let z = Ring::integers();
        let mut coeffs = vec![0i64; 3];
        coeffs.extend(g);
        let p: Vec<_> = coeffs.iter().map(|&c| z.from_i64(c)).collect();
        let v = poly::eval(&z, &p, &z.from_i64(2));
        prop_assert!(verify_analyticity_step(&b(0), &b(2), 3, z.as_integer(&v).unwrap()).unwrap());
    }
}
