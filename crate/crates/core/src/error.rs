use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} is outside the supported range 2..=9")]
    Dimension(usize),

    #[error("letter {letter} is outside 1..={d}")]
    LetterOutOfRange { letter: u8, d: usize },

    #[error("series mismatch: {0}")]
    Mismatch(String),

    #[error("level {requested} is out of range (truncation level {level})")]
    LevelOutOfRange { requested: usize, level: usize },

    #[error("exponential needs a zero constant term")]
    NonzeroConstantTerm,

    #[error("word of odd length {0}")]
    OddLength(usize),

    #[error("letter {letter} occurs an odd number of times")]
    OddLetterCount { letter: u8 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("invalid series document: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
