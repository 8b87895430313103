use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("threshold {threshold} at vertex {vertex} is outside 1..={degree} (degree {degree})")]
    ThresholdExceedsDegree {
        vertex: usize,
        threshold: u32,
        degree: usize,
    },

    #[error("majority threshold is not integral at vertex {vertex} (degree {degree}); pass explicit thresholds instead")]
    UnsupportedMajority { vertex: usize, degree: usize },

    #[error("unsupported regime for {family}: {reason}")]
    UnsupportedRegime { family: String, reason: String },

    #[error("construction {family} failed its {kind} self-check")]
    ConstructionFailed { family: String, kind: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn regime(family: &str, reason: impl Into<String>) -> Self {
        Error::UnsupportedRegime {
            family: family.to_string(),
            reason: reason.into(),
        }
    }
}
