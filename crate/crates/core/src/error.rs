use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found} ({what})")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid matroid description: {0}")]
    InvalidDescription(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("integer overflow guard violated: {0}")]
    Overflow(String),

    #[error("profit matrix rows must be nonincreasing (row {row})")]
    NotShifted { row: usize },

    #[error("not in shuffle set: {0}")]
    NotInShuffleSet(String),

    #[error("matroid kind `{0}` is not allowed here; intersection solving requires strongly base orderable kinds (uniform, partition, transversal)")]
    DisallowedKind(String),

    #[error("brute-force guard exceeded: {what} = {size} > {cap}")]
    GuardExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("explicit set system is empty")]
    EmptySystem,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(what: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            what,
            expected,
            found,
        })
    }
}
