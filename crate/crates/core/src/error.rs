//! Error type shared by every solver and parser in the crate.

use thiserror::Error;

/// Errors are split by who can fix them: `Validation` means the input is
/// malformed or out of contract, `Budget` means the requested computation is
/// too large for the configured cap. Internal arithmetic inconsistencies
/// (e.g. a simplex certificate failing to verify) are bugs and panic instead.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("validation error: {0}")]
    Validation(String),

    /// The requested computation exceeds a configured size cap.
    #[error("budget exceeded for {what}: required {required}, cap {cap}")]
    Budget {
        what: &'static str,
        required: u128,
        cap: u128,
    },
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
