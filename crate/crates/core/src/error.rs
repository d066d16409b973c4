use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid digit {digit} at position {position}")]
    InvalidDigit { position: usize, digit: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid automaton: {0}")]
    InvalidDfao(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{value} does not fit in a window of {len} digits (maximum {max})")]
    WindowOverflow { value: String, len: usize, max: String },

    #[error("merge precondition failed: |I ∩ J| = {overlap} < p + q = {needed}")]
    MergePrecondition { overlap: String, needed: String },

    #[error("glue chain failed at claim {index}: {source}")]
    GlueChain { index: usize, source: Box<Error> },

    #[error("bases {a} and {b} are multiplicatively dependent ({a}^{m} = {b}^{n})")]
    DependentBases { a: u64, b: u64, m: u32, n: u32 },

    #[error("automata disagree at x = {x}: {left:?} vs {right:?}")]
    SequenceMismatch { x: u64, left: String, right: String },

    #[error("resource limit exceeded: {0}")]
    Resource(String),
}
