use thiserror::Error;
use wmv_core::WmvError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn invalid(field: impl Into<String>, message: impl std::fmt::Display) -> Self {
        CliError::Validation {
            field: field.into(),
            message: message.to_string(),
        }
    }

    pub fn io(path: impl AsRef<std::path::Path>, err: impl std::fmt::Display) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            message: err.to_string(),
        }
    }

    /// Process exit status: 1 validation, 2 capacity, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } => 1,
            CliError::Capacity(_) => 2,
            CliError::Io { .. } => 3,
        }
    }

    /// Attach the name of the flag whose value caused a library error.
    pub fn from_core(field: &str, err: WmvError) -> Self {
        if err.is_capacity() {
            CliError::Capacity(err.to_string())
        } else {
            CliError::invalid(field, err)
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub(crate) trait Context<T> {
    fn field(self, name: &str) -> CliResult<T>;
}

impl<T> Context<T> for Result<T, WmvError> {
    fn field(self, name: &str) -> CliResult<T> {
        self.map_err(|e| CliError::from_core(name, e))
    }
}
