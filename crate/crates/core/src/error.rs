use thiserror::Error;

/// Errors produced anywhere in the seed selection pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: expected two node labels, found {found} token(s)")]
    Parse { line: usize, found: usize },

    #[error("edge list contains no nodes")]
    EmptyInput,

    #[error("node id {id} out of range for graph with {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },

    #[error("seed set is empty")]
    EmptySeedSet,

    #[error("activation probability {0} is outside the allowed range")]
    InvalidProbability(f64),

    #[error("seed budget {k} exceeds the candidate pool of {pool} nodes")]
    InfeasibleBudget { k: usize, pool: usize },

    #[error("pagerank did not converge in {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("p-values must be sorted in ascending order")]
    Unsorted,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
