//! Degree-bounded decision procedures for finitely generated subfields of a
//! rational function field: linear dimension over a subfield, linear
//! disjointness, annihilator search, Jacobian independence, p-independence,
//! p-bases, imperfection degree, separability and relative algebraic
//! closedness.
//!
//! Every search is bounded and three-valued. A `Fails` verdict is always
//! certain (its witness re-verifies by direct exact evaluation); `Holds` is
//! exact where the base is the prime field and a degree-bounded certificate
//! otherwise, with the bound recorded on the verdict.

mod annihilator;
mod disjoint;
mod jacobian;
mod maclane;
mod pchar;
mod regular;
mod span;
mod spec;

pub use annihilator::{annihilator_basis, annihilator_search, AnnPoly, AnnihilatorResult};
pub use disjoint::{linearly_disjoint, DisjointResult};
pub use jacobian::{alg_indep_jacobian, transcendence_degree, DiffMatrix, TrdegResult};
pub use maclane::{mac_lane_check, MacLaneReport, ResidualCert};
pub use pchar::{
    imperfection_degree, membership_oracle, p_basis, p_independent, separable_extension,
    separable_in, MembershipResult, Representation, SeparabilityResult,
};
pub use regular::{regular_upto, RegularResult};
pub use span::{field_member, lin_dim, FieldMemberResult, LinDimResult, LinearDependence};
pub use spec::FieldSpec;

use crate::algebra::AlgebraError;
use thiserror::Error;

/// Default search bound used when a caller does not supply one.
pub const DEFAULT_BOUND: u32 = 4;

#[derive(Clone, PartialEq, Debug, Error)]
pub enum FieldError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("mismatched characteristics: {left} vs {right}")]
    CharMismatch { left: u64, right: u64 },
    #[error("mismatched ambient variable universes")]
    AmbientMismatch,
    #[error("operation requires {expected}")]
    WrongCharacteristic { expected: &'static str },
    #[error("search bound must be at least 1, got {0}")]
    BadBound(u32),
    #[error("element list must be nonempty")]
    EmptyElements,
    #[error("`{element}` is not a member of the subfield (at the bound)")]
    NotSubfield { element: String },
    #[error("extension is inseparable: {witness}")]
    Inseparable { witness: String },
    #[error("operation is only supported for the full ambient field")]
    NotFullAmbient,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}
