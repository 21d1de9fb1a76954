//! Finite forests: unique reduced paths, path closure, the path-meets-base
//! independence criterion, type equality over a base via closure
//! isomorphism, and degree saturation.

mod enumerate;
mod forest;
mod relation;

pub use enumerate::{forests_on, forests_up_to};
pub use forest::{Forest, ReducedPath};
pub use relation::{prepare_family, ForestRelation, PreparedForest};

use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum PsError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("label `{0}` is not alphanumeric/underscore/hash")]
    BadLabel(String),
    #[error("self loop at `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("edge set contains a cycle")]
    Cyclic,
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}
