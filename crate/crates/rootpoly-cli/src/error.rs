use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Engine(#[from] rootpoly::Error),
    #[error("{0}")]
    Usage(String),
    #[error("root data: {0}")]
    RootData(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    /// Process exit status; 1 is reserved for failed checks.
    pub fn exit_code(&self) -> i32 {
        use rootpoly::Error as E;
        match self {
            CliError::Usage(_) | CliError::RootData(_) => 2,
            CliError::Engine(e) => match e {
                E::Parse(_) | E::InvalidSpec(_) | E::InvalidChoice(_) | E::ArityMismatch { .. } | E::NotDominant(_) => 2,
                E::RegularityViolation { .. } | E::ParameterDegeneracy(_) | E::DivisionByZero => 3,
                E::RankGuardExceeded(_) => 4,
                E::NonIntegerParams(_) => 5,
                E::NotInvariant | E::InexactDivision(_) => 6,
            },
            CliError::Io(_) => 7,
        }
    }

    pub fn kind(&self) -> &'static str {
        use rootpoly::Error as E;
        match self {
            CliError::Usage(_) => "usage",
            CliError::RootData(_) => "root_data",
            CliError::Io(_) => "io",
            CliError::Engine(e) => match e {
                E::DivisionByZero => "division_by_zero",
                E::ParameterDegeneracy(_) => "parameter_degeneracy",
                E::ArityMismatch { .. } => "arity_mismatch",
                E::NotDominant(_) => "not_dominant",
                E::RegularityViolation { .. } => "regularity_violation",
                E::RankGuardExceeded(_) => "rank_guard_exceeded",
                E::NotInvariant => "not_invariant",
                E::NonIntegerParams(_) => "non_integer_params",
                E::InvalidSpec(_) => "invalid_spec",
                E::InvalidChoice(_) => "invalid_choice",
                E::Parse(_) => "parse",
                E::InexactDivision(_) => "inexact_division",
            },
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({"error": {"kind": self.kind(), "message": self.to_string(), "exit_code": self.exit_code()}})
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
