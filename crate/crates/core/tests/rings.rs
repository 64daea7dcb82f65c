use proptest::prelude::*;
use smoothring::rings::{
    is_proper, is_semi_integral, semi_integral_definition_check, semi_integral_verdict, FpPoly,
    SemiIntegralVerdict,
};
use smoothring::{Ring, RingElement};

fn brute_units(n: u64) -> Vec<bool> {
    (0..n).map(|a| (0..n).any(|b| (a * b) % n == 1 % n)).collect()
}

/// Straight from the definition: x != 0 with x^k (x y + 1) = 0 must be a unit.
fn brute_semi_integral(n: u64) -> bool {
    let units = brute_units(n);
    for x in 1..n {
        if units[x as usize] {
            continue;
        }
        for y in 0..n {
            let w = (x * y + 1) % n;
            let mut xk = x % n;
            for _ in 0..n {
                if (xk * w).is_multiple_of(n) {
                    return false;
                }
                xk = (xk * x) % n;
            }
        }
    }
    true
}

fn brute_proper(n: u64) -> bool {
    let units = brute_units(n);
    (0..n).any(|t| !units[t as usize] && !units[((t + 1) % n) as usize])
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[test]
fn modular_rings_against_definitions() {
    for n in 2..=80u64 {
        let r = Ring::modular(n).unwrap();
        let semi = brute_semi_integral(n);
        assert_eq!(is_semi_integral(&r), semi, "Z/{n}");
        assert_eq!(semi, is_prime(n));
        assert_eq!(semi_integral_definition_check(&r, 64).is_none(), semi, "Z/{n}");
        assert_eq!(is_proper(&r), brute_proper(n), "Z/{n}");
        if semi {
            // finite semi-integral domains are fields
            assert!(brute_units(n).iter().skip(1).all(|&u| u));
        }
    }
}

#[test]
fn verdict_witnesses() {
    let r = Ring::modular(6).unwrap();
    assert_eq!(semi_integral_verdict(&r, 1 << 16), SemiIntegralVerdict::Idempotent(RingElement::Residue(3)));
    assert_eq!(semi_integral_verdict(&r, 1 << 16).to_string(), "false (idempotent 3)");
    let r = Ring::modular(12).unwrap();
    assert!(matches!(semi_integral_verdict(&r, 1 << 16), SemiIntegralVerdict::Nilpotent(_)));
    let c = semi_integral_definition_check(&Ring::modular(4).unwrap(), 64).unwrap();
    assert_eq!((c.x, c.y, c.n), (RingElement::Residue(2), RingElement::Residue(0), 2));
    assert!(is_semi_integral(&Ring::integers()));
    assert!(is_semi_integral(&Ring::poly_over_prime(3).unwrap()));
    assert!(semi_integral_definition_check(&Ring::integers(), 6).is_none());
    // beyond the scan bound, primality decides
    assert!(is_semi_integral(&Ring::modular(1_000_003).unwrap()));
    assert!(!is_semi_integral(&Ring::modular(1_000_001).unwrap()));
    assert!(is_proper(&Ring::modular(1_000_001).unwrap()));
    assert!(!is_proper(&Ring::modular(7_u64.pow(9)).unwrap()));
}

#[test]
fn ring_names_round_trip() {
    for s in ["Z", "Z/6", "GF(3)[t]"] {
        let r: Ring = s.parse().unwrap();
        assert_eq!(r.to_string(), s);
    }
    assert!("Z/1".parse::<Ring>().is_err());
    assert!("GF(4)[t]".parse::<Ring>().is_err());
}

fn ring_strategy() -> impl Strategy<Value = Ring> {
    prop_oneof![
        Just(Ring::integers()),
        (2u64..60).prop_map(|n| Ring::modular(n).unwrap()),
        prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(|p| Ring::poly_over_prime(p).unwrap()),
    ]
}

fn element(r: Ring, seed: (i64, Vec<u64>)) -> RingElement {
    match r.kind() {
        smoothring::RingKind::PolyOverPrime { p } => RingElement::Poly(FpPoly::from_coeffs(seed.1, p)),
        _ => r.from_i64(seed.0),
    }
}

fn elem_seed() -> impl Strategy<Value = (i64, Vec<u64>)> {
    (-1000i64..1000, prop::collection::vec(0u64..50, 0..5))
}

proptest! {
    #[test]
    fn commutative_ring_axioms(r in ring_strategy(), a in elem_seed(), b in elem_seed(), c in elem_seed()) {
        let (a, b, c) = (element(r, a), element(r, b), element(r, c));
        prop_assert_eq!(r.add(&a, &b), r.add(&b, &a));
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.add(&a, &r.neg(&a)), r.zero());
        prop_assert_eq!(r.mul(&a, &r.one()), a.clone());
        prop_assert_eq!(r.parse_element(&r.format_element(&a)).unwrap(), a);
    }

    #[test]
    fn exact_division_inverts_multiplication(r in ring_strategy(), a in elem_seed(), b in elem_seed()) {
        let (a, b) = (element(r, a), element(r, b));
        let ab = r.mul(&a, &b);
        let q = r.divide_exact(&ab, &b);
        prop_assert!(q.is_some());
        prop_assert_eq!(r.mul(&b, &q.clone().unwrap()), ab);
        if r.is_integral_domain() && !r.is_zero(&b) {
            prop_assert_eq!(q, Some(a.clone()));
        }
        if let Some(q) = r.divide_exact(&a, &b) {
            prop_assert_eq!(r.mul(&b, &q), a);
        }
    }
}
