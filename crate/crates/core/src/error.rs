use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient ring mismatch: {0} variables vs {1} variables")]
    AmbientMismatch(usize, usize),

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("ideal is not squarefree")]
    NotSquarefree,

    #[error("exponent {exponent} exceeds the configured cap {cap}")]
    ExponentTooLarge { exponent: u32, cap: u32 },

    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { divisor: String, dividend: String },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("too many variables: {0} (the limit is 64)")]
    TooManyVariables(usize),

    #[error("not a face of the complex")]
    NotAFace,

    #[error("{0} out of range")]
    OutOfRange(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A theorem-backed cross-check failed. Always a bug in this crate.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
