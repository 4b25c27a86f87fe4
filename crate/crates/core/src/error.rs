//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Shape inconsistency between declared dimensions and data.
    #[error("structural error: {0}")]
    Structure(String),

    /// A hypothesis of an operation was violated (e.g. inadmissible exponents).
    #[error("domain error: {0}")]
    Domain(String),

    /// A field specification does not fit the grid box with the required margin.
    #[error("support violation: {0}")]
    Support(String),

    /// The lattice point budget would be exceeded.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// Run configuration is malformed; the message names the offending JSON path.
    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the CLI: 2 for validation problems,
    /// 3 for budget overruns, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Structure(_)
            | Error::Domain(_)
            | Error::Support(_)
            | Error::Config(_)
            | Error::Json(_) => 2,
            Error::Budget(_) => 3,
            Error::Io(_) => 1,
        }
    }
}
