use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error(transparent)]
    Numeric(#[from] kprabhakar::Error),
    #[error("{failed} reduction check(s) failed")]
    ReduceCheck { failed: usize },
}

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const NUMERICS: u8 = 2;
    pub const CONFIG: u8 = 3;
    pub const SPECTRAL: u8 = 4;
    pub const REDUCE_CHECK: u8 = 5;
    pub const CERTIFIED: u8 = 10;
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use kprabhakar::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse { .. } => exit::USAGE,
            CliError::ReduceCheck { .. } => exit::REDUCE_CHECK,
            CliError::Numeric(e) => match e {
                E::NonConvergence { .. } | E::Quadrature { .. } => exit::NUMERICS,
                E::SpectralFailure { .. } => exit::SPECTRAL,
                E::InvalidParameter { .. }
                | E::Pole { .. }
                | E::Overflow { .. }
                | E::Domain(_)
                | E::InvalidConfig(_)
                | E::DegenerateConfig { .. }
                | E::InvalidGrid(_) => exit::CONFIG,
            },
        }
    }
}
