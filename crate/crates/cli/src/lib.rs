//! File formats, run reports and the benchmark harness behind the `mmfvs`
//! binary.

pub mod bench;
pub mod commands;
pub mod dimacs;
pub mod families;
pub mod report;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] dimacs::ParseError),
    #[error(transparent)]
    Core(#[from] mmfvs::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("certificate check failed: {0}")]
    Certificate(String),
    #[error("{0}")]
    Usage(String),
}

pub fn read_file(path: &str) -> Result<String, CliError> {
    let res = if path == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    res.map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}

pub fn write_file(path: &str, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}

/// Seed from `MMFVS_SEED`, else 0.
pub fn default_seed() -> u64 {
    std::env::var("MMFVS_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(0)
}
