//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    /// Exact polynomial division was requested but the divisor does not
    /// divide the dividend.
    #[error("polynomial division is not exact")]
    NotDivisible,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FockError {
    /// A letter index escaped `1..=n` where a letter was required.
    #[error("letter {0} out of range 1..={1}")]
    LetterOutOfRange(i64, usize),

    /// Truncating would cut a slot that does not continue the frozen tail
    /// descent, losing information.
    #[error(
        "truncation depth {requested} is shallower than the minimal representable depth {minimal}"
    )]
    TruncationTooShallow { requested: usize, minimal: usize },

    /// The operation would have to read or write a slot beyond the stored
    /// depth; the caller must re-truncate deeper first.
    #[error("operation needs slot {slot} but depth is {depth}")]
    BoundaryViolation { slot: usize, depth: usize },

    /// An honest (non-graded) operator composition was requested on a
    /// semi-infinite tensor, where the sum it expands to is infinite.
    #[error(
        "honest composition on a semi-infinite tensor diverges; use graded pieces or finite width"
    )]
    DivergentAction,

    /// Work size exceeded the configured cap (width > 9 and similar).
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WedgeError {
    #[error(transparent)]
    Fock(#[from] FockError),

    /// The straightening measure failed to decrease; indicates a defect, not
    /// a legitimate input condition.
    #[error("straightening did not terminate (measure failed to decrease at {0:?})")]
    NonTerminating(Vec<i64>),

    /// A remainder could not be written in the normally ordered basis at the
    /// current depth.
    #[error("remainder not recognizable in the wedge basis at depth {0}; raise the depth")]
    RecognitionFailure(usize),

    /// The partition/wedge conversion was asked for an inconsistent class.
    #[error("target lives in class {found}, expected class {expected}")]
    TargetClassMismatch { expected: i64, found: i64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KzError {
    #[error(transparent)]
    Coeff(#[from] CoeffError),

    /// `(P_ij + id)W` failed to be divisible by `(z_i - z_j)`; the input was
    /// not an antisymmetrized wedge polynomial.
    #[error("(P_{i}{j} + id)W is not divisible by (z{i} - z{j})")]
    NotDivisible { i: usize, j: usize },

    /// Work size exceeded the desk-scale cap (nN > 8 slots).
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}
