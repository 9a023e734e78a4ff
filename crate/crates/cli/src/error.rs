use birat::ambient::AmbientError;
use birat::links::LinksError;
use birat::qpoly::PolyError;
use birat::singular::SingularError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("member rejected: {0}")]
    Certificate(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Certificate(_) => 2,
            CliError::Inconsistency(_) => 3,
        }
    }

    pub fn outcome(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "validation_error",
            CliError::Certificate(_) => "certificate_failure",
            CliError::Inconsistency(_) => "inconsistency",
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<AmbientError> for CliError {
    fn from(e: AmbientError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<SingularError> for CliError {
    fn from(e: SingularError) -> Self {
        match e {
            SingularError::Hypothesis(_) | SingularError::NotQuasismooth(_) | SingularError::Degenerate(_) => {
                CliError::Certificate(e.to_string())
            }
            SingularError::Unresolved(_) => CliError::Inconsistency(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<LinksError> for CliError {
    fn from(e: LinksError) -> Self {
        match e {
            LinksError::Certificate { .. } => CliError::Certificate(e.to_string()),
            LinksError::Inconsistency(_) | LinksError::Sampling(_) => CliError::Inconsistency(e.to_string()),
            LinksError::Shape(_) => CliError::Validation(e.to_string()),
            LinksError::Poly(p) => p.into(),
            LinksError::Ambient(a) => a.into(),
            LinksError::Singular(s) => s.into(),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}
