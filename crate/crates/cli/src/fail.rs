use matroid_shift::Error;

pub const EXIT_OTHER: i32 = 1;
pub const EXIT_DISCONNECTED: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;
pub const EXIT_OVERFLOW: i32 = 5;
pub const EXIT_DISALLOWED: i32 = 6;
pub const EXIT_NOT_IN_SHUFFLE: i32 = 7;

/// An error with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::DimensionMismatch { .. } | Error::InvalidDescription(_) | Error::InvalidInput(_) => EXIT_PARSE,
            Error::Overflow(_) => EXIT_OVERFLOW,
            Error::DisallowedKind(_) => EXIT_DISALLOWED,
            Error::NotInShuffleSet(_) => EXIT_NOT_IN_SHUFFLE,
            _ => EXIT_OTHER,
        };
        CliError { code, message: e.to_string() }
    }
}
