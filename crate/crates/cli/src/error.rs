use freqstat::StatError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error(transparent)]
    Analysis(#[from] StatError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Data(_) => "data",
            CliError::Io(_) => "io",
            CliError::Analysis(e) => match e {
                StatError::EmptyInput => "empty_input",
                StatError::OutOfRange(_) => "out_of_range",
                StatError::ScaleLevel { .. } => "scale_level",
                StatError::InvalidParameter(_) => "invalid_parameter",
                StatError::LengthMismatch { .. } => "length_mismatch",
                StatError::InsufficientData(_) => "insufficient_data",
                StatError::Degenerate(_) => "degenerate",
                StatError::NullEvent => "null_event",
                StatError::PartitionViolated(_) => "partition_violated",
                StatError::Overflow(_) => "overflow",
                StatError::NoConvergence(_) => "no_convergence",
            },
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
