use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("period {0} is too small (the shape spans 4 cells per axis, need p >= 4)")]
    PeriodTooSmall(u64),

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("window of {cells} cells exceeds the budget of {budget}")]
    CellBudget { cells: String, budget: u64 },

    #[error("code is not perfect: {0}")]
    NotPerfect(String),

    #[error("singular generator matrix")]
    Singular,

    #[error("lattice is not {0}-periodic")]
    NotPeriodic(u64),

    #[error("size guard: {0}")]
    Guard(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
