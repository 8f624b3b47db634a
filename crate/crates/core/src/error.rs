use std::io;

use thiserror::Error;

use crate::structure::{Placement, ValidationReport};

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A placement, step or argument list does not fit the structure's shape.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// Two σ-entries resolve to the same placement with different products.
    #[error("collision at {placement}: {first} vs {second}")]
    Collision {
        placement: Placement,
        first: String,
        second: String,
    },

    /// A structure or document breaks one or more invariants.
    #[error("validation failed:\n{0}")]
    Validation(ValidationReport),

    #[error("enumeration budget exceeded: {needed} > {budget}")]
    Budget { needed: u128, budget: u64 },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("index set is not closed under the action: {0}")]
    NotASubmodule(String),

    /// The minimality/connectivity biconditional failed on a μ-multiplicative input.
    /// This can only mean a bug in the library.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("cannot symmetrize edges {edges:?}")]
    SymmetrizeConflict { edges: Vec<(usize, usize)> },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
