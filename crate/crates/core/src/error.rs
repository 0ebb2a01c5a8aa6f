use crate::data::ScaleLevel;

/// Errors raised by the statistical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StatError {
    #[error("empty input")]
    EmptyInput,

    #[error("out-of-range observation: {0}")]
    OutOfRange(f64),

    #[error("scale level {found:?} does not meet the required level {required:?}")]
    ScaleLevel {
        required: ScaleLevel,
        found: ScaleLevel,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("degenerate: {0}")]
    Degenerate(String),

    #[error("conditioning on null event")]
    NullEvent,

    #[error("partition violated: {0}")]
    PartitionViolated(String),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("no convergence: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, StatError>;

pub(crate) fn invalid(msg: impl Into<String>) -> StatError {
    StatError::InvalidParameter(msg.into())
}

pub(crate) fn degenerate(msg: impl Into<String>) -> StatError {
    StatError::Degenerate(msg.into())
}

pub(crate) fn insufficient(msg: impl Into<String>) -> StatError {
    StatError::InsufficientData(msg.into())
}

/// A quantity that is either available or absent with a stated reason.
///
/// Serialises as a bare number when present and as `{"absent": reason}`
/// otherwise.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
#[serde(untagged)]
pub enum Measure {
    Value(f64),
    Absent { absent: String },
}

impl Measure {
    pub fn absent(reason: impl Into<String>) -> Self {
        Measure::Absent {
            absent: reason.into(),
        }
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            Measure::Value(v) => Some(*v),
            Measure::Absent { .. } => None,
        }
    }

    pub fn is_present(&self) -> bool {
        matches!(self, Measure::Value(_))
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Measure::Value(_) => None,
            Measure::Absent { absent } => Some(absent),
        }
    }
}

impl From<Result<f64>> for Measure {
    fn from(r: Result<f64>) -> Self {
        match r {
            Ok(v) => Measure::Value(v),
            Err(e) => Measure::absent(e.to_string()),
        }
    }
}
