use thiserror::Error;

/// Errors raised by the library.
///
/// [`Error::is_validation`] separates bad input (exit code 1 in the CLI) from
/// failures that happen while a valid request is being processed.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("gcd of entries is {0}, so no Frobenius number exists")]
    NotPrimitive(u64),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),

    #[error("not applicable: {0}")]
    Inapplicable(String),

    #[error(
        "brute-force sweep would need {needed} slots, budget is {budget}; use the exact solver"
    )]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error(
        "no admissible vector after {attempts} attempts (n={n}, k={k}, m={m}, condition={condition})"
    )]
    SamplingExhausted {
        attempts: u32,
        n: usize,
        k: u64,
        m: u64,
        condition: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Validation(_)
                | Error::NotPrimitive(_)
                | Error::RegimeMismatch(_)
                | Error::Domain(_)
                | Error::Inapplicable(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
