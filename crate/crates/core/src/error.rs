use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("undefined for empty word")]
    EmptyWord,
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("alphabet needs at least two distinct symbols, got {0}")]
    UnaryAlphabet(usize),
    #[error("alphabet has {0} symbols; at most 256 are supported")]
    AlphabetTooLarge(usize),
    #[error("symbol {0:?} appears more than once in the alphabet")]
    DuplicateSymbol(char),
    #[error("symbol {0:?} is not in the alphabet")]
    ForeignSymbol(char),
    #[error("symbol index {index} is out of range for an alphabet of size {size}")]
    SymbolIndexOutOfRange { index: usize, size: usize },
    #[error("words are over different alphabets")]
    AlphabetMismatch,
    #[error("offset {offset} is out of range for a word of length {len}")]
    OffsetOutOfRange { offset: usize, len: usize },
    #[error("word length {len} exceeds the brute-force bound {bound}")]
    WordTooLong { len: usize, bound: usize },
    #[error("invalid threshold: {0}")]
    InvalidThreshold(String),
    #[error("length must be at least {min}, got {got}")]
    LengthTooSmall { got: usize, min: usize },
    #[error("invalid insertion witness: {0}")]
    InvalidWitness(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("census needs {needed} classifications but the budget is {budget}; raise it with --budget")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("classifier mismatch on {word}: fast={fast}, oracle={oracle}")]
    ClassifierMismatch {
        word: String,
        fast: String,
        oracle: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
