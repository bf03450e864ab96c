//! Finite fields, projective planes over them, and the Bruck–Ryser test.

mod bruck_ryser;
mod field;
mod plane;

pub use bruck_ryser::{bruck_ryser, isqrt, sum_of_two_squares, BrOutcome, BrVerdict};
pub use field::{least_irreducible, prime_power, FieldError, FiniteField, DEFAULT_FIELD_CEILING};
pub use plane::{Coords, PlaneError, PlaneJson, PlaneViolation, ProjectivePlane};

/// GF(q) with the default ceiling.
pub fn make_field(q: u32) -> Result<FiniteField, FieldError> {
    FiniteField::new(q)
}

/// PG(2, q) over the canonical GF(q).
pub fn build_pg2(q: u32) -> Result<ProjectivePlane, PlaneError> {
    ProjectivePlane::build(q)
}

pub fn validate_plane(plane: &ProjectivePlane) -> Result<(), PlaneViolation> {
    plane.validate()
}
