use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("bad bit string: {found:?} at position {position}")]
    BadBitString { position: usize, found: char },

    #[error("form is not alternating (needs symmetric matrix with zero diagonal)")]
    NotAlternating,

    #[error("exhaustive search needs 2^{b4} evaluations, above the cap of 2^{cap}")]
    CapExceeded { b4: usize, cap: usize },

    #[error("unsupported family parameters: {0}")]
    UnsupportedFamily(String),

    #[error("value not certified: {0}")]
    NotCertified(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
