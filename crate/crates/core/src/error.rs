use alloc::string::String;

use crate::designs::Violation;
use crate::ring::{AxiomViolation, SpecError};

/// Errors raised by the constructions of this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A size limit was hit.
    #[error("{what} has size {size}, exceeding the cap of {cap}")]
    CapExceeded {
        /// What was being built.
        what: &'static str,
        /// Its (projected) size.
        size: u128,
        /// The configured cap.
        cap: u128,
    },
    /// The ring description is invalid.
    #[error("invalid ring spec: {0}")]
    Spec(#[from] SpecError),
    /// Raw tables do not describe a ring.
    #[error("ring axiom violated: {0}")]
    Axiom(#[from] AxiomViolation),
    /// A table ring could not be loaded.
    #[error("cannot load table ring `{path}`: {reason}")]
    TableSource {
        /// The referenced file.
        path: String,
        /// Why loading failed.
        reason: String,
    },
    /// An operation that requires `rad R = 0` got a ring with nonzero radical.
    #[error("the ring has a nonzero Jacobson radical of size {0}")]
    RadicalNonzero(usize),
    /// A pair was expected to be admissible.
    #[error("pair ({0}, {1}) is not admissible")]
    NotAdmissible(String, String),
    /// A matrix was expected to be invertible.
    #[error("matrix is not invertible")]
    NotInvertible,
    /// A point id is out of range.
    #[error("point id {0} is out of range")]
    NoSuchPoint(u32),
    /// Three points were expected to be mutually distant.
    #[error("points {0}, {1}, {2} are not mutually distant")]
    NotMutuallyDistant(u32, u32, u32),
    /// No subfield embedding could be produced.
    #[error("no subfield embedding: {0}")]
    Embedding(String),
    /// A truncated-chain base block needs a larger field.
    #[error("dropping {drop} points needs |K| > {min}, got |K| = {q}")]
    FieldTooSmall {
        /// Number of removed points.
        drop: usize,
        /// Required strict lower bound on `|K|`.
        min: usize,
        /// Actual `|K|`.
        q: usize,
    },
    /// The operation needs a local ring or a local algebra.
    #[error("{0}")]
    NotLocal(&'static str),
    /// Orbit–stabiliser arithmetic did not divide: the generators do not
    /// generate the group whose order was supplied.
    #[error("group order {group_order} is not divisible by orbit length {orbit}")]
    StabiliserNotIntegral {
        /// The group order used.
        group_order: u128,
        /// The orbit length found.
        orbit: u128,
    },
    /// A divisible-design axiom failed.
    #[error("{0}")]
    Violation(#[from] Violation),
    /// Malformed incidence data.
    #[error("malformed design: {0}")]
    MalformedDesign(String),
    /// Words of different lengths were compared.
    #[error("words have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    /// Two independent computations of the same quantity disagree.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
