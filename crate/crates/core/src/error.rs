use std::io;

use thiserror::Error;

/// Errors produced by the solver, the estimate lab and the file formats.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("non-finite state detected at t = {t}")]
    BlowUp { t: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("inadmissible regularity: {}", violations.join("; "))]
    Inadmissible { violations: Vec<String> },

    #[error("snapshot magic mismatch: found {found:?}")]
    BadMagic { found: [u8; 4] },

    #[error("unsupported snapshot version {found} (expected {expected})")]
    BadVersion { found: u16, expected: u16 },

    #[error("snapshot truncated: {0}")]
    Truncated(String),

    #[error("snapshot checksum mismatch: stored {stored:#010x}, computed {computed:#010x}")]
    Checksum { stored: u32, computed: u32 },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
