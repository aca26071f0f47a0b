//! The boundary value problem configuration file.
//!
//! ```json
//! { "schema": 1, "a": 0, "b": 1, "xi": 0.5, "eta": 0.3,
//!   "k": 1, "rho": 1, "beta": 2.5, "gamma": 0.7, "omega": 0 }
//! ```

use std::fs;
use std::path::Path;

use kprabhakar::{BVPConfig, MLParams};
use serde::Deserialize;

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub schema: Option<u32>,
    pub a: f64,
    pub b: f64,
    pub xi: f64,
    pub eta: f64,
    pub k: f64,
    pub rho: f64,
    pub beta: f64,
    pub gamma: f64,
    pub omega: f64,
}

impl ConfigFile {
    pub fn parse(text: &str, path: &Path) -> Result<Self, CliError> {
        let parsed: ConfigFile = serde_json::from_str(text)
            .map_err(|e| CliError::Parse { path: path.to_path_buf(), message: e.to_string() })?;
        match parsed.schema {
            None | Some(SCHEMA_VERSION) => Ok(parsed),
            Some(v) => Err(CliError::Parse {
                path: path.to_path_buf(),
                message: format!("unsupported schema version {v} (expected {SCHEMA_VERSION})"),
            }),
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text, path)
    }

    /// Converts to a library configuration; validation happens when a
    /// Green's function is built from it.
    pub fn to_bvp(&self) -> Result<BVPConfig, CliError> {
        let params = MLParams::new(self.k, self.rho, self.beta, self.gamma, self.omega)?;
        Ok(BVPConfig { a: self.a, b: self.b, xi: self.xi, eta: self.eta, params })
    }
}
