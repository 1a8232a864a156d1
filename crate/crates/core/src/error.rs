use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(String),

    #[error("invalid step {found:?} at index {index}")]
    BadStepChar { index: usize, found: char },

    /// A north step that would leave the region `x >= 2y`.
    #[error("step {index} leaves the region x >= 2y (would reach ({x}, {y}))")]
    AboveLine { index: usize, x: u32, y: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("matching is not in class Q: {0}")]
    NotInClassQ(String),

    #[error("matching contains the pattern {0}")]
    ContainsPattern(String),

    #[error("lift unavailable at this position: {0}")]
    LiftUnavailable(String),

    #[error("not in the image of the construction: {0}")]
    NotInImage(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// True for malformed input (as opposed to well-formed input rejected by a
    /// domain rule).
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::BadStepChar { .. }
                | Error::AboveLine { .. }
                | Error::Parse(_)
                | Error::InvalidMatching(_)
                | Error::InvalidTree(_)
        )
    }
}
