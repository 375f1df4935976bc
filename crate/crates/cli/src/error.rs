use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {message}", path.display())]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] eigenid::Error),
}

/// Process exit codes. Stable: scripts depend on them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Mismatch = 1,
    Degenerate = 2,
    Infeasible = 3,
    Input = 4,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        CliError::Parse {
            path: path.into(),
            message: message.to_string(),
        }
    }

    pub fn status(&self) -> Status {
        match self {
            CliError::Core(e) if e.is_degenerate() => Status::Degenerate,
            CliError::Core(e) if e.is_infeasible() => Status::Infeasible,
            CliError::Core(e) if matches!(e.root(), eigenid::Error::Convergence { .. }) => Status::Mismatch,
            _ => Status::Input,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
