use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The inputs fall outside the cases with a known closed-form answer.
    #[error("case not covered: {0}")]
    NotCovered(String),

    #[error("coordinate set is not downward closed at ({x}, {y})")]
    NotStaircase { x: u32, y: u32 },

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("graph has {vertices} vertices, exhaustive search supports at most {limit}")]
    TooLarge { vertices: usize, limit: usize },

    #[error("component of height {height} with multiplier {multiplier} does not meet [1, {n}]")]
    OutsideRange {
        height: u32,
        multiplier: u64,
        n: u64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
