//! Error type shared by the solver modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A physical or numerical invariant was violated.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// The conservative-to-primitive recovery failed.
    #[error("primitive recovery failed at cell {cell:?}: {detail}")]
    Recovery { cell: Option<[usize; 2]>, detail: String },

    /// The relaxation root solve did not find an acceptable parameter.
    #[error("relaxation failed at t = {t}: {detail} (try a smaller time step)")]
    Relaxation { t: f64, detail: String },

    /// Invalid configuration or request.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Attaches a cell index to a recovery error.
    pub fn at_cell(self, cell: [usize; 2]) -> Error {
        match self {
            Error::Recovery { detail, .. } => Error::Recovery { cell: Some(cell), detail },
            other => other,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
