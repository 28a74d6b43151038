use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: bad indices, shape mismatches, empty sets where a
    /// nonempty one is required.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A configuration with no exact decision procedure, or one that
    /// exceeds a configured cap.
    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),

    /// Every strategy of some player came out dominated.
    #[error("assumption violated: every strategy of player {player} is dominated")]
    AssumptionViolated { player: usize },

    #[error("degenerate dominator: a strategy cannot strictly dominate itself")]
    DegenerateDominator,

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    /// Exhaustive search stopped after `explored` restrictions. `partial`
    /// holds the irreducible restrictions found so far, as kept index sets.
    #[error("budget of {limit} restrictions exceeded ({} outcomes found so far)", partial.len())]
    BudgetExceeded { limit: usize, explored: usize, partial: Vec<Vec<Vec<usize>>> },

    #[error("reduction system contains a cycle through node {node}")]
    CyclicSystem { node: usize },
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::UnsupportedConfiguration(msg.into())
    }
}
