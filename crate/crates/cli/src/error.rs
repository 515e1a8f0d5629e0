use std::fmt;
use std::path::PathBuf;

use sdbounds_core::Error as CoreError;

/// Command failures; rendered as machine-parsable JSON on stderr with
/// exit code 1 (usage errors exit 2 via the argument parser).
#[derive(Debug)]
pub enum CliError {
    Core(CoreError),
    Parse { path: PathBuf, detail: String },
    NotNormalized { path: PathBuf, deviation: f64 },
    Io { path: PathBuf, source: std::io::Error },
    BadArgument(String),
}

impl CliError {
    /// Stable error code for scripting against stderr.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => match e {
                CoreError::NotSquare => "NotSquare",
                CoreError::NotHermitian { .. } => "NotHermitian",
                CoreError::DimensionMismatch { .. } => "DimensionMismatch",
                CoreError::NonNormalizedState { .. } => "NotNormalized",
                CoreError::NonFinite => "NonFinite",
                CoreError::ConvergenceFailure { .. } => "ConvergenceFailure",
                CoreError::NegativeEigenvalue { .. } => "NegativeEigenvalue",
                CoreError::TraceDeviation { .. } => "TraceDeviation",
                CoreError::DegenerateSuperposition { .. } => "DegenerateSuperposition",
                CoreError::CoefficientsNotNormalized { .. } => "CoefficientsNotNormalized",
                CoreError::EmptySuperposition => "EmptySuperposition",
                CoreError::InvalidDimension(_) => "InvalidDimension",
                CoreError::InvalidConfig(_) => "InvalidConfig",
                CoreError::GenerationFailure { .. } => "GenerationFailure",
            },
            CliError::Parse { .. } => "ParseError",
            CliError::NotNormalized { .. } => "NotNormalized",
            CliError::Io { .. } => "IoError",
            CliError::BadArgument(_) => "BadArgument",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "error": self.code(),
            "message": self.to_string(),
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Parse { path, detail } => {
                write!(f, "failed to parse {}: {detail}", path.display())
            }
            CliError::NotNormalized { path, deviation } => write!(
                f,
                "state in {} deviates from unit norm by {deviation:.3e}; pass --renormalize to accept it",
                path.display()
            ),
            CliError::Io { path, source } => {
                write!(f, "io error on {}: {source}", path.display())
            }
            CliError::BadArgument(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
