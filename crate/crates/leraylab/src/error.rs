//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An operation was called outside its contract (dimension mismatch,
    /// unresolvable scaling factor, mollifier too wide for the box, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// Bad run configuration, with the offending key/line when parsing text.
    #[error("config error: {0}")]
    Config(String),

    /// Config text parse failure at a specific line.
    #[error("config error at line {line}: {msg}")]
    ConfigLine { line: usize, msg: String },

    /// The time stepper produced a non-finite value.
    #[error("solution blew up at t = {t}: non-finite values detected")]
    BlowUp { t: f64 },

    /// Checkpoint or ledger file did not match the expected layout.
    #[error("format error in {path}: {msg}")]
    Format { path: String, msg: String },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
