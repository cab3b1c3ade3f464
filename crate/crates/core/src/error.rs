use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty text: closedness is only defined for nonempty strings")]
    EmptyText,
    #[error("position {pos} out of range 1..={len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("span ({start}, {end}) is not within 1..={len} with start <= end")]
    SpanOutOfRange { start: usize, end: usize, len: usize },
    #[error("position {0} is already in the set")]
    DuplicatePosition(u32),
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("alphabet size {0} is outside 1..=256")]
    AlphabetSize(usize),
    #[error("no lengths requested")]
    NoLengths,
    #[error("fast and oracle MCS counts differ at n = {n}: {fast} vs {oracle}")]
    CountMismatch { n: usize, fast: usize, oracle: usize },
}
