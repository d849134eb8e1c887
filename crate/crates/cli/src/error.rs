use std::fmt;

use zetaforge_core::counting::CountError;
use zetaforge_core::field::FieldError;
use zetaforge_core::hasse_weil::HasseWeilError;
use zetaforge_core::zeta::ZetaError;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Failure = 1,
    BadInput = 2,
    Budget = 3,
    NoFit = 4,
    ConjectureFailed = 5,
    Singular = 6,
}

#[derive(Debug)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl CliError {
    pub fn new(code: ExitCode, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self::new(ExitCode::BadInput, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new(ExitCode::Failure, e.to_string())
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        let code = match e {
            FieldError::NoFieldTooLarge { .. } => ExitCode::Budget,
            _ => ExitCode::BadInput,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::Field(f) => f.into(),
            CountError::BudgetExceeded { .. } => CliError::new(ExitCode::Budget, e.to_string()),
            CountError::SingularCurve(_) => CliError::new(ExitCode::Singular, e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<ZetaError> for CliError {
    fn from(e: ZetaError) -> Self {
        let code = match e {
            ZetaError::NoRationalFit { .. }
            | ZetaError::NonIntegralSolution(_)
            | ZetaError::InconsistentCounts { .. } => ExitCode::NoFit,
            _ => ExitCode::BadInput,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<HasseWeilError> for CliError {
    fn from(e: HasseWeilError) -> Self {
        match e {
            HasseWeilError::Count(c) => c.into(),
            HasseWeilError::SingularCurve => CliError::new(ExitCode::Singular, e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}
