//! The Lyndon algebras `E_{n+1}` and their representability status.
//!
//! `E_{n+1}` has an identity atom `1'` and `n` symmetric diversity atoms
//! `a1..an` with `ai;ai = 1' + ai` and, for `i ≠ j`, `ai;aj` the set of
//! diversity atoms other than `ai` and `aj`. It is representable exactly when
//! a projective plane of order `n - 1` exists. Only prime-power orders are
//! constructed here; other orders are either ruled out by Bruck–Ryser or
//! left unknown.

use serde_json::json;

use crate::algebra::{AlgebraError, AtomStructure, Axiom, Element, MAX_ATOMS};
use crate::geometry::{
    bruck_ryser, prime_power, FiniteField, ProjectivePlane, DEFAULT_FIELD_CEILING,
};
use crate::representation::{build_affine_representation, Relation, Representation};

/// Builds `E_{n+1}`. Atom 0 is `1'`, atom `i` is `ai`.
pub fn build_lyndon(n: usize) -> Result<AtomStructure, AlgebraError> {
    build_lyndon_with_capacity(n, MAX_ATOMS)
}

pub fn build_lyndon_with_capacity(
    n: usize,
    capacity: usize,
) -> Result<AtomStructure, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::NoAtoms);
    }
    if n + 1 > capacity.min(MAX_ATOMS) {
        return Err(AlgebraError::Capacity {
            count: n + 1,
            capacity: capacity.min(MAX_ATOMS),
        });
    }
    let atoms: Vec<String> = std::iter::once("1'".to_owned())
        .chain((1..=n).map(|i| format!("a{i}")))
        .collect();
    let diversity: Element = (1..=n).collect();
    let table = (0..=n)
        .map(|a| {
            (0..=n)
                .map(|b| match (a, b) {
                    (0, x) | (x, 0) => Element::atom(x),
                    (a, b) if a == b => Element::atom(0).union(Element::atom(a)),
                    (a, b) => Element::from_bits(
                        diversity.bits() & !Element::atom(a).bits() & !Element::atom(b).bits(),
                    ),
                })
                .collect()
        })
        .collect();
    AtomStructure::with_capacity(
        format!("E{}", n + 1),
        atoms,
        0,
        (0..=n).collect(),
        table,
        capacity,
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonRepresentableReason {
    /// No projective plane of this order exists.
    BruckRyser { order: u64 },
    /// The table violates these axioms, so there is no relation algebra to represent.
    NotRelationAlgebra { failed: Vec<Axiom> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReprStatus {
    /// Carries a representation that passed verification.
    Representable(Box<Representation>),
    NonRepresentable(NonRepresentableReason),
    Unknown {
        order: u64,
        note: String,
    },
}

impl ReprStatus {
    pub fn to_json(&self, n: usize) -> serde_json::Value {
        let mut out = json!({ "n": n, "algebra": format!("E{}", n + 1) });
        match self {
            ReprStatus::Representable(rep) => {
                out["status"] = json!("representable");
                out["base"] = json!(rep.base());
                out["verified"] = json!(true);
            }
            ReprStatus::NonRepresentable(NonRepresentableReason::BruckRyser { order }) => {
                out["status"] = json!("non_representable");
                out["reason"] = json!("bruck_ryser");
                out["order"] = json!(order);
            }
            ReprStatus::NonRepresentable(NonRepresentableReason::NotRelationAlgebra { failed }) => {
                out["status"] = json!("non_representable");
                out["reason"] = json!("not_relation_algebra");
                out["failed_axioms"] = json!(failed.iter().map(|a| a.name()).collect::<Vec<_>>());
                out["note"] = json!("the plane correspondence is applied for n >= 4 only");
            }
            ReprStatus::Unknown { order, note } => {
                out["status"] = json!("unknown");
                out["order"] = json!(order);
                out["note"] = json!(note);
            }
        }
        out
    }
}

/// Representability of `E_{n+1}`, backed by a verified representation
/// whenever the answer is positive.
pub fn representability_status(n: usize) -> Result<ReprStatus, AlgebraError> {
    representability_status_with_ceiling(n, DEFAULT_FIELD_CEILING)
}

pub fn representability_status_with_ceiling(
    n: usize,
    field_ceiling: u32,
) -> Result<ReprStatus, AlgebraError> {
    let alg = build_lyndon(n)?;
    let report = alg.check_axioms();
    if !report.all_pass() {
        return Ok(ReprStatus::NonRepresentable(
            NonRepresentableReason::NotRelationAlgebra {
                failed: report.failed(),
            },
        ));
    }
    if n == 1 {
        // one diversity atom: the full diversity relation on three points
        let rep = Representation::new(
            alg,
            3,
            vec![
                Relation::diagonal(3),
                Relation::from_pairs(
                    3,
                    (0..3).flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (i, j))),
                ),
            ],
        )
        .expect("shapes match");
        return Ok(verified(rep));
    }

    let order = (n - 1) as u64;
    if prime_power(order as u32).is_some() {
        if order > field_ceiling as u64 {
            return Ok(ReprStatus::Unknown {
                order,
                note: format!("prime power order above the field ceiling {field_ceiling}"),
            });
        }
        let field = FiniteField::with_ceiling(order as u32, field_ceiling)
            .expect("prime power within ceiling");
        let plane = ProjectivePlane::over(field);
        let rep = build_affine_representation(&plane).expect("order >= 3 here");
        return Ok(verified(rep));
    }
    if bruck_ryser(order).rules_out() {
        return Ok(ReprStatus::NonRepresentable(
            NonRepresentableReason::BruckRyser { order },
        ));
    }
    Ok(ReprStatus::Unknown {
        order,
        note: "no plane constructed and Bruck-Ryser is inconclusive".into(),
    })
}

fn verified(rep: Representation) -> ReprStatus {
    match rep.verify() {
        Ok(()) => ReprStatus::Representable(Box::new(rep)),
        Err(v) => panic!("constructed representation failed verification: {v:?}"),
    }
}
