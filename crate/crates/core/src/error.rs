use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    Alphabet(String),

    #[error("invalid word: {0}")]
    Word(String),

    #[error("coordinate {value} at axis {axis} is outside [1, {n}]")]
    CoordinateOutOfRange { axis: usize, value: usize, n: usize },

    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid line: {0}")]
    Line(String),

    #[error("invalid parameters: {0}")]
    Parameters(String),

    #[error("arithmetic overflow evaluating {0}")]
    Overflow(String),

    #[error("word has length {word}, grid side is {side}")]
    LengthMismatch { word: usize, side: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("operation requires a dense grid")]
    NotDense,

    #[error("{0} is too large to enumerate")]
    Infeasible(String),

    #[error("construction not applicable: {0}")]
    NotApplicable(String),

    #[error("verification failure: {0}")]
    Inconsistent(String),

    #[error("sampling gave up after {0} rejections")]
    SamplingExhausted(u64),
}
