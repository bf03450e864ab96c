//! Finite integral relation algebras, Lyndon algebras from projective lines,
//! their representations, and equation checking.

pub mod algebra;
pub mod bounds;
pub mod cli;
pub mod eqlang;
pub mod geometry;
pub mod lyndon;
pub mod representation;
pub mod subalgebra;

pub use algebra::{
    AlgebraError, AtomStructure, Axiom, AxiomReport, AxiomStatus, Element, Witness, MAX_ATOMS,
};
pub use lyndon::{build_lyndon, representability_status, NonRepresentableReason, ReprStatus};
pub use representation::{Relation, ReprViolation, Representation};
