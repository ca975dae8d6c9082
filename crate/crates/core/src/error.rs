use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("budget exceeded: {resource} (limit {limit}, a-priori bound {bound})")]
    BudgetExceeded {
        resource: &'static str,
        limit: u64,
        bound: String,
    },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("background must be east-deterministic")]
    NotEastDeterministic,

    #[error("alphabet of {count} tiles exceeds the bound {bound}")]
    AlphabetTooLarge { count: u128, bound: u128 },

    #[error("not implemented for this slope: {0}")]
    SpecialCase(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
