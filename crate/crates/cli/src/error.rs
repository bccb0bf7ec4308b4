use centropy_core::Error as CoreError;

/// CLI failure classes with a stable exit-code contract:
/// 1 usage, 2 data/parse, 3 numeric/config (0 is success).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    NumericConfig(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::NumericConfig(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(m) => write!(f, "data error: {m}"),
            CliError::NumericConfig(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Config(_) | CoreError::Parameter(_) | CoreError::Domain(_) => {
                CliError::NumericConfig(e.to_string())
            }
            _ => CliError::Data(e.to_string()),
        }
    }
}
