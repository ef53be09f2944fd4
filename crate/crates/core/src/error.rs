use thiserror::Error;

/// Errors produced by instance ingestion, validation and the solver itself.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("infeasible tour: {0}")]
    InfeasibleTour(String),

    #[error("degenerate tour: cluster optimization needs at least 3 clusters, got {0}")]
    DegenerateTour(usize),

    #[error("enumeration budget exceeded: {estimate} tours > budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
