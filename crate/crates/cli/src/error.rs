use gbf_core::GbfError;
use serde::Serialize;

pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

/// Failure reported as JSON on stderr together with its exit code.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliError {
    pub error: String,
    pub message: String,
    pub exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hint: Option<String>,
}

impl CliError {
    pub fn config(kind: &str, message: impl Into<String>) -> Self {
        CliError {
            error: kind.to_string(),
            message: message.into(),
            exit_code: EXIT_CONFIG,
            hint: None,
        }
    }

    pub fn with_hint(mut self, hint: impl Into<String>) -> Self {
        self.hint = Some(hint.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("error serializes")
    }
}

impl From<GbfError> for CliError {
    fn from(e: GbfError) -> Self {
        let hint = match &e {
            GbfError::NotPd { .. } => {
                Some("pass --augment <delta> to shift the spectrum off its support, or pick a PD descriptor")
            }
            GbfError::NotNorming { .. } => Some("add sampling nodes or lower --bandwidth"),
            _ => None,
        };
        CliError {
            error: e.kind().to_string(),
            message: e.to_string(),
            exit_code: if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_CONFIG },
            hint: hint.map(String::from),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::config("Io", e.to_string())
    }
}
