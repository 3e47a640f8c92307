use thiserror::Error;

use crate::words::Symbol;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid alphabet: modulus must be at least 2, got {modulus}")]
    InvalidAlphabet { modulus: u64 },

    #[error("symbol {symbol} is not in the alphabet {{0, …, {}}}", .modulus - 1)]
    InvalidSymbol { symbol: Symbol, modulus: u32 },

    #[error("range {start}..{end} is out of bounds for a word of length {len}")]
    OutOfBounds { start: usize, end: usize, len: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid alphabet map: {0}")]
    InvalidMap(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("malformed prefix cache: {0}")]
    Store(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
