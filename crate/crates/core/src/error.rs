use thiserror::Error;

use crate::search::SoundnessViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial needs at least one coefficient")]
    Empty,
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("leading coefficient must be nonzero")]
    ZeroLeading,
    #[error("degree error: {0}")]
    Degree(String),
    #[error("profile error: {0}")]
    Profile(String),
    #[error("alpha error: {0}")]
    Alpha(String),
    #[error("P(0) = 0: the constant coefficient must be nonzero")]
    OriginZero,
    #[error("relative tolerance {0} outside (0, 0.1]")]
    Tolerance(f64),
    #[error("sample count {got} below the required minimum {min}")]
    Samples { got: usize, min: usize },
    #[error("invalid search configuration: {0}")]
    Config(String),
    #[error("soundness violation: certified ratio {} exceeds 1", .0.ratio)]
    Soundness(Box<SoundnessViolation>),
}
