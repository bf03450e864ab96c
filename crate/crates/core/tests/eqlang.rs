mod common;

use std::collections::HashMap;

use proptest::prelude::*;
use relalg::eqlang::{evaluate, holds_with_workers, parse_equation, CheckResult, Equation, Term};
use relalg::{build_lyndon, AtomStructure, Element};

fn term(vars: &'static [&'static str]) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        4 => prop::sample::select(vars).prop_map(Term::var),
        1 => Just(Term::Zero),
        1 => Just(Term::One),
        1 => Just(Term::Identity),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::complement),
            inner.clone().prop_map(Term::converse),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.join(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.meet(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.compose(b)),
        ]
    })
}

fn equation() -> impl Strategy<Value = Equation> {
    (term(&["x", "y", "z"]), term(&["x", "y", "z"])).prop_map(|(l, r)| Equation::new(l, r))
}

fn small_algebra() -> impl Strategy<Value = AtomStructure> {
    prop_oneof![
        (1usize..=4).prop_map(|n| build_lyndon(n).unwrap()),
        Just(common::one_atom()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn printing_round_trips(eq in equation()) {
        let printed = eq.to_string();
        let back = parse_equation(&printed).unwrap();
        prop_assert_eq!(back.length(), eq.length());
        prop_assert_eq!(&back, &eq, "{}", printed);
    }

    #[test]
    fn witnesses_falsify(eq in equation(), alg in small_algebra()) {
        if let CheckResult::Fails(w) = holds_with_workers(&eq, &alg, None, 1).unwrap() {
            let env: HashMap<String, Element> = w.into_iter().collect();
            let l = evaluate(&eq.lhs, &alg, &env).unwrap();
            let r = evaluate(&eq.rhs, &alg, &env).unwrap();
            prop_assert_ne!(l, r);
        }
    }

    #[test]
    fn restriction_is_monotone(eq in equation(), alg in small_algebra(), mask in any::<u64>()) {
        let full = holds_with_workers(&eq, &alg, None, 1).unwrap();
        let subset: Vec<Element> = alg.elements().enumerate()
            .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
            .map(|(_, e)| e)
            .collect();
        let restricted = holds_with_workers(&eq, &alg, Some(&subset), 1).unwrap();
        if full.holds() {
            prop_assert!(restricted.holds());
        }
        // a witness within the subset is a witness overall
        if let CheckResult::Fails(w) = restricted {
            prop_assert!(w.iter().all(|(_, e)| subset.contains(e)));
            prop_assert!(!full.holds());
        }
    }

    #[test]
    fn result_is_independent_of_workers(eq in equation(), alg in small_algebra(), workers in 2usize..=8) {
        prop_assert_eq!(
            holds_with_workers(&eq, &alg, None, 1).unwrap(),
            holds_with_workers(&eq, &alg, None, workers).unwrap()
        );
    }

    #[test]
    fn witness_is_the_least_assignment(eq in equation(), alg in small_algebra()) {
        // brute force in the same order: first variable slowest, elements by bitmask
        let vars: Vec<String> = eq.variables().iter().map(|s| s.to_string()).collect();
        let elems: Vec<Element> = alg.elements().collect();
        let total = elems.len().pow(vars.len() as u32);
        let mut expected = CheckResult::Holds;
        for mut idx in 0..total {
            let mut assignment = vec![Element::EMPTY; vars.len()];
            for slot in assignment.iter_mut().rev() {
                *slot = elems[idx % elems.len()];
                idx /= elems.len();
            }
            let env: HashMap<String, Element> = vars.iter().cloned().zip(assignment.iter().copied()).collect();
            if evaluate(&eq.lhs, &alg, &env).unwrap() != evaluate(&eq.rhs, &alg, &env).unwrap() {
                expected = CheckResult::Fails(vars.iter().cloned().zip(assignment).collect());
                break;
            }
        }
        prop_assert_eq!(holds_with_workers(&eq, &alg, None, 1).unwrap(), expected);
    }
}

#[test]
fn lyndon_identities() {
    let e5 = build_lyndon(4).unwrap();
    for text in [
        "(x + y) . z = x . z + y . z",
        "x ; y = y ; x",
        "x^ = x",
        "(x ; y) ; z = x ; (y ; z)",
        "x ; (y + z) = x ; y + x ; z",
    ] {
        let eq = parse_equation(text).unwrap();
        assert_eq!(
            holds_with_workers(&eq, &e5, None, 1).unwrap(),
            CheckResult::Holds,
            "{text}"
        );
    }
}

#[test]
fn group_algebra_is_not_commutative() {
    let s3 = common::s3();
    let eq = parse_equation("x ; y = y ; x").unwrap();
    let one = holds_with_workers(&eq, &s3, None, 1).unwrap();
    let eight = holds_with_workers(&eq, &s3, None, 8).unwrap();
    assert_eq!(one, eight);
    let w = one.witness_map().expect("S3 is not abelian");
    assert_eq!(s3.element_names(w["x"]), ["(12)"]);
    assert_eq!(s3.element_names(w["y"]), ["(13)"]);
}
