use thiserror::Error;

/// Errors raised by constructions, validators and parsers in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid layering: {0}")]
    InvalidLayering(String),

    #[error("invalid tree-decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A budget of a fake-edge enlargement was exceeded.
    #[error("enlarge budget `{budget}` exceeded: {actual} > {limit}")]
    BudgetExceeded {
        budget: &'static str,
        actual: u128,
        limit: u128,
    },

    /// A clustering bound was violated by a measured coloring.
    #[error("{stage}: measured clustering {measured} exceeds bound {bound}")]
    BoundExceeded {
        stage: String,
        measured: usize,
        bound: String,
    },

    /// A searched-for object could not be decided within the step budget.
    #[error("inconclusive: search budget of {0} steps exhausted")]
    Inconclusive(u64),

    /// A lemma-backed construction failed; this indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
