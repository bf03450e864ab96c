mod common;

use common::{naive_prime_power, naive_two_squares};
use proptest::prelude::*;
use relalg::geometry::{
    bruck_ryser, build_pg2, prime_power, sum_of_two_squares, validate_plane, BrOutcome,
    FiniteField, PlaneJson, PlaneViolation, ProjectivePlane,
};

#[test]
fn two_squares_agrees_with_double_loop() {
    for q in 0..=10_000u64 {
        let found = sum_of_two_squares(q);
        assert_eq!(found.is_some(), naive_two_squares(q), "q = {q}");
        if let Some((a, b)) = found {
            assert_eq!(a * a + b * b, q);
        }
    }
}

#[test]
fn bruck_ryser_matches_its_definition() {
    for q in 2..=2_000u64 {
        let expected = matches!(q % 4, 1 | 2) && !naive_two_squares(q);
        assert_eq!(bruck_ryser(q).rules_out(), expected, "q = {q}");
    }
}

#[test]
fn constructible_orders_are_never_ruled_out() {
    for q in (2..=500u64).filter(|&q| naive_prime_power(q)) {
        assert_eq!(bruck_ryser(q).outcome, BrOutcome::NoConclusion, "q = {q}");
    }
}

#[test]
fn prime_power_detection() {
    for q in 0..=5_000u32 {
        assert_eq!(
            prime_power(q).is_some(),
            naive_prime_power(q as u64),
            "q = {q}"
        );
        if let Some((p, k)) = prime_power(q) {
            assert_eq!(p.pow(k), q);
        }
    }
}

#[test]
fn fields_satisfy_axioms() {
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let f = FiniteField::new(q).unwrap();
        assert_eq!(f.verify_axioms(), Ok(()), "GF({q})");
        // the multiplicative group is cyclic of order q - 1
        let generator = (1..q).find(|&g| {
            let mut x = g;
            (1..q - 1).all(|_| {
                let fresh = x != 1;
                x = f.mul(x, g);
                fresh
            })
        });
        assert!(generator.is_some(), "GF({q})");
    }
}

#[test]
fn planes_validate() {
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let plane = build_pg2(q).unwrap();
        let np = (q * q + q + 1) as usize;
        assert_eq!(plane.points().len(), np);
        assert_eq!(plane.lines().len(), np);
        assert_eq!(validate_plane(&plane), Ok(()), "PG(2,{q})");
        for p in plane.points() {
            let first = p.iter().find(|&&c| c != 0).unwrap();
            assert_eq!(*first, 1, "{p:?} is not normalized");
        }
    }
}

#[test]
fn non_prime_powers_are_refused() {
    for q in [6, 10, 12, 14, 15] {
        assert!(build_pg2(q).is_err());
    }
}

#[test]
fn plane_json_round_trip() {
    let plane = build_pg2(4).unwrap();
    let text = serde_json::to_string(&plane.to_json()).unwrap();
    let json: PlaneJson = serde_json::from_str(&text).unwrap();
    assert_eq!(ProjectivePlane::from_json(&json).unwrap(), plane);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn any_flipped_incidence_is_caught(q in prop::sample::select(vec![2u32, 3, 4, 5]), p in any::<usize>(), l in any::<usize>()) {
        let mut plane = build_pg2(q).unwrap();
        let n = plane.points().len();
        let (p, l) = (p % n, l % n);
        let was = plane.incident(p, l);
        plane.set_incidence(p, l, !was);
        prop_assert_eq!(plane.validate(), Err(PlaneViolation::Incidence { point: p, line: l }));
    }
}
