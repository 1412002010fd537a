use thiserror::Error;

use crate::report::CheckReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("carrier must have at least one element")]
    EmptyCarrier,

    #[error("invalid element name {0:?}")]
    InvalidName(String),

    #[error("duplicate name {0:?}")]
    DuplicateName(String),

    #[error("{op}: expected dimension {expected}, found {found}")]
    SizeMismatch {
        op: String,
        expected: usize,
        found: usize,
    },

    #[error("{op}: entry {value} out of range for carrier of size {size}")]
    OutOfRange { op: String, value: usize, size: usize },

    #[error("derived relation is not a partial order (witness {witness:?})")]
    NotAPartialOrder { witness: Vec<usize> },

    #[error("order has no least upper bound for pair {witness:?}")]
    NotALattice { witness: Vec<usize> },

    #[error("structures have different signatures")]
    SignatureMismatch,

    #[error("carrier mismatch: {left} vs {right} elements")]
    CarrierMismatch { left: usize, right: usize },

    #[error("missing operation or constant {0:?}")]
    Missing(String),

    #[error("prerequisite check failed:\n{0}")]
    PrerequisiteFailed(Box<CheckReport>),

    #[error("lattice is not orthomodular:\n{0}")]
    NotOrthomodular(Box<CheckReport>),

    #[error("triple is not a coupled right orthosemiring (axiom {axiom} fails):\n{report}")]
    NotCoupled {
        axiom: String,
        report: Box<CheckReport>,
    },

    #[error("algebra is not an MV-algebra:\n{0}")]
    NotMv(Box<CheckReport>),

    #[error("derived join/meet disagree with the derived order (witness {witness:?})")]
    InconsistentOrder { witness: Vec<usize> },

    #[error("chain length must be at least 2, got {0}")]
    BadSize(usize),

    #[error("invalid task: {0}")]
    InvalidTask(String),
}

impl Error {
    /// Attach an operation name to a table validation error.
    pub(crate) fn for_op(self, name: &str) -> Self {
        match self {
            Error::SizeMismatch {
                expected, found, ..
            } => Error::SizeMismatch {
                op: name.to_owned(),
                expected,
                found,
            },
            Error::OutOfRange { value, size, .. } => Error::OutOfRange {
                op: name.to_owned(),
                value,
                size,
            },
            other => other,
        }
    }
}
