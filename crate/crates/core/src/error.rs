use thiserror::Error;

/// Failures surfaced by the library. Mathematical violations that are part of
/// a report (e.g. a Jacobi failure found by validation) are data, not errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid block composition: {0}")]
    InvalidComposition(String),

    #[error("subspace is not closed under the bracket: [{0}, {1}] escapes")]
    NotBracketClosed(usize, usize),

    #[error("map is not a derivation: Leibniz rule fails on basis pair ({0}, {1})")]
    NotDerivation(usize, usize),

    #[error("element is not in the Cartan subalgebra")]
    NotInCartan,

    #[error("root ({0}, {1}) is not a root of gl_{2}")]
    InvalidRoot(usize, usize, usize),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
