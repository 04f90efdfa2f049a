use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6 error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list error on line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("product would have {requested} vertices, above the cap of {cap}")]
    VertexCap { requested: usize, cap: usize },

    #[error("search exceeded the node budget of {budget}")]
    BudgetExceeded { budget: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors caused by a configured resource limit rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::VertexCap { .. } | Error::BudgetExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
