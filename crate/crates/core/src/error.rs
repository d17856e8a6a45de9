use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("symbol {0:?} is not in the alphabet")]
    BadSymbol(char),

    #[error("symbol index {0} is out of range")]
    BadSymbolIndex(u8),

    #[error("alphabet mismatch: expected {expected}, found {found}")]
    AlphabetMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("state budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },

    #[error("word has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("slice length {0} exceeds the enumeration limit of 24")]
    SliceTooLarge(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("bound violated: {0}")]
    BoundViolated(String),

    #[error("malformed circuit: {0}")]
    Circuit(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidArgument(message.into())
    }
}
