mod common;

use std::collections::HashSet;

use common::{lyndon_table, table_by_name};
use relalg::geometry::build_pg2;
use relalg::representation::{
    build_affine_representation, build_affine_representation_unchecked, verify_representation,
    ReprError, RepresentationJson,
};
use relalg::{build_lyndon, ReprViolation, Representation};

type Pairs = HashSet<(usize, usize)>;

/// Relational composition on explicit pair sets.
fn compose(r: &Pairs, s: &Pairs) -> Pairs {
    let mut out = HashSet::new();
    for &(x, y) in r {
        for &(y2, z) in s {
            if y == y2 {
                out.insert((x, z));
            }
        }
    }
    out
}

/// The table of the algebra the relations actually induce, read off by
/// composing pair sets and decomposing the result into atom relations.
fn induced_table(
    rep: &Representation,
) -> std::collections::HashMap<(String, String), std::collections::BTreeSet<String>> {
    let alg = rep.target();
    let rels: Vec<Pairs> = (0..alg.atom_count())
        .map(|a| rep.relation(a).pairs().collect())
        .collect();
    let mut out = std::collections::HashMap::new();
    for a in 0..rels.len() {
        for b in 0..rels.len() {
            let prod = compose(&rels[a], &rels[b]);
            let atoms = (0..rels.len())
                .filter(|&c| !rels[c].is_disjoint(&prod))
                .map(|c| {
                    assert!(
                        rels[c].is_subset(&prod),
                        "composition is not a union of atoms"
                    );
                    alg.atom_name(c).to_string()
                })
                .collect();
            out.insert(
                (alg.atom_name(a).to_string(), alg.atom_name(b).to_string()),
                atoms,
            );
        }
    }
    out
}

#[test]
fn affine_representations_realize_lyndon_algebras() {
    for q in [3u32, 4, 5, 7, 8, 9] {
        let rep = build_affine_representation(&build_pg2(q).unwrap()).unwrap();
        let q = q as usize;
        assert_eq!(rep.base(), q * q);
        assert_eq!(rep.target().atom_count(), q + 2);
        assert_eq!(verify_representation(&rep), Ok(()), "q = {q}");
        assert_eq!(induced_table(&rep), lyndon_table(q + 1), "q = {q}");
        assert_eq!(
            table_by_name(&rep.induced_structure().unwrap()),
            lyndon_table(q + 1)
        );
    }
}

#[test]
fn directions_are_symmetric_with_q_minus_one_partners() {
    for q in [3u32, 4, 5, 7] {
        let rep = build_affine_representation(&build_pg2(q).unwrap()).unwrap();
        let q = q as usize;
        for a in 1..rep.target().atom_count() {
            let r = rep.relation(a);
            assert!(r.pairs().all(|(i, j)| i != j && r.contains(j, i)));
            for x in 0..rep.base() {
                assert_eq!(r.pairs().filter(|&(i, _)| i == x).count(), q - 1);
            }
        }
    }
}

#[test]
fn relations_partition_the_square() {
    let rep = build_affine_representation(&build_pg2(4).unwrap()).unwrap();
    let mut seen = HashSet::new();
    for a in 0..rep.target().atom_count() {
        for p in rep.relation(a).pairs() {
            assert!(seen.insert(p), "{p:?} in two relations");
        }
    }
    assert_eq!(seen.len(), 16 * 16);
}

#[test]
fn order_two_fails_with_a_composition_witness() {
    let plane = build_pg2(2).unwrap();
    assert_eq!(
        build_affine_representation(&plane).unwrap_err(),
        ReprError::ConstructionUnsound(2)
    );
    let rep = build_affine_representation_unchecked(&plane).unwrap();
    match verify_representation(&rep) {
        Err(ReprViolation::Composition {
            atoms, in_product, ..
        }) => {
            assert_eq!(atoms, (1, 1));
            // a1 ; a1 should contain a1 but the product is only the diagonal
            assert!(!in_product);
            let r = rep.relation(1);
            let prod = r.compose(r);
            assert_eq!(
                prod.pairs().collect::<Vec<_>>(),
                (0..4).map(|i| (i, i)).collect::<Vec<_>>()
            );
        }
        other => panic!("expected a composition failure, got {other:?}"),
    }
}

#[test]
fn dump_is_sorted_and_round_trips() {
    let rep = build_affine_representation(&build_pg2(3).unwrap()).unwrap();
    let text = serde_json::to_string(&rep.to_json()).unwrap();
    let json: RepresentationJson = serde_json::from_str(&text).unwrap();
    for pairs in json.relations.values() {
        assert!(pairs.windows(2).all(|w| w[0] < w[1]));
    }
    let back = Representation::from_json(&json, build_lyndon(4).unwrap()).unwrap();
    assert_eq!(verify_representation(&back), Ok(()));
    assert_eq!(back.to_json(), rep.to_json());
}
