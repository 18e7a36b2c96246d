use thiserror::Error;

/// Errors produced anywhere in the crate.
///
/// Variants map onto the CLI exit codes through [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("enumeration budget exceeded: {0}")]
    Budget(String),

    #[error("integer overflow while computing {0}")]
    Overflow(String),

    #[error("block structures differ: {0}")]
    Structure(String),

    #[error("unsupported block structure: {0}")]
    UnsupportedStructure(String),

    #[error("numerical failure: {message} (residual {residual:e})")]
    NumericalFailure { message: String, residual: f64 },

    #[error("epsilon {epsilon} violates isolation of {target}: limit point {offending} lies within 2*epsilon")]
    IsolationViolated {
        target: String,
        offending: String,
        epsilon: f64,
    },

    #[error("generation failed: {0}")]
    GenerationFailure(String),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_)
            | Error::Structure(_)
            | Error::UnsupportedStructure(_)
            | Error::IsolationViolated { .. }
            | Error::Schema(_)
            | Error::Json(_) => 2,
            Error::Budget(_) | Error::Overflow(_) => 3,
            Error::NumericalFailure { .. } | Error::GenerationFailure(_) => 4,
            Error::Io(_) => 1,
        }
    }

    /// Short machine-readable tag for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Budget(_) => "budget",
            Error::Overflow(_) => "overflow",
            Error::Structure(_) => "structure",
            Error::UnsupportedStructure(_) => "unsupported-structure",
            Error::NumericalFailure { .. } => "numerical-failure",
            Error::IsolationViolated { .. } => "isolation-violated",
            Error::GenerationFailure(_) => "generation-failure",
            Error::Schema(_) => "schema",
            Error::Json(_) => "schema",
            Error::Io(_) => "io",
        }
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
