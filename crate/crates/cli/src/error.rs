use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{message}")]
    Validation { code: String, message: String },
    #[error("{message}")]
    Computation { code: String, message: String },
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn validation<E: std::error::Error + std::fmt::Debug>(e: E) -> Self {
        CliError::Validation {
            code: error_code(&e),
            message: e.to_string(),
        }
    }

    pub fn computation<E: std::error::Error + std::fmt::Debug>(e: E) -> Self {
        CliError::Computation {
            code: error_code(&e),
            message: e.to_string(),
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        CliError::Validation {
            code: "InvalidArgument".into(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } => 1,
            CliError::Computation { .. } => 2,
            CliError::Mismatch(_) => 3,
        }
    }

    pub fn record(&self) -> ErrorRecord {
        let (kind, code, message) = match self {
            CliError::Validation { code, message } => ("validation", code.clone(), message.clone()),
            CliError::Computation { code, message } => ("computation", code.clone(), message.clone()),
            CliError::Mismatch(message) => ("mismatch", "OracleMismatch".to_string(), message.clone()),
        };
        ErrorRecord {
            error: ErrorBody {
                kind,
                code,
                message,
                exit_code: self.exit_code(),
            },
        }
    }
}

#[derive(Serialize)]
pub struct ErrorRecord {
    pub error: ErrorBody,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ErrorBody {
    pub kind: &'static str,
    pub code: String,
    pub message: String,
    pub exit_code: i32,
}

/// Innermost variant name of a (possibly wrapped) error enum, read from its
/// `Debug` form: `Field(NotPrime(4))` gives `NotPrime`.
pub fn error_code<E: std::fmt::Debug>(e: &E) -> String {
    let debug = format!("{e:?}");
    let mut rest = debug.as_str();
    let mut code = String::new();
    loop {
        let ident: String = rest.chars().take_while(|c| c.is_ascii_alphanumeric() || *c == '_').collect();
        if ident.is_empty() || !ident.starts_with(|c: char| c.is_ascii_uppercase()) {
            break;
        }
        code = ident.clone();
        match rest[ident.len()..].strip_prefix('(') {
            Some(inner) => rest = inner,
            None => break,
        }
    }
    if code.is_empty() {
        "Error".into()
    } else {
        code
    }
}
