use thiserror::Error;

/// Errors produced by the library.
///
/// The CLI maps these onto exit codes: parse and domain errors are usage
/// errors, size errors are cap errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} = {value} exceeds the cap of {cap}")]
    Size {
        what: &'static str,
        value: String,
        cap: String,
    },

    /// A closed form did not divide exactly. Only a transcription bug can
    /// cause this.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    pub(crate) fn size(what: &'static str, value: impl ToString, cap: impl ToString) -> Self {
        Error::Size {
            what,
            value: value.to_string(),
            cap: cap.to_string(),
        }
    }

    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
