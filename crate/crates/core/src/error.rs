use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid code parameters: {0}")]
    InvalidParameters(String),

    #[error("information set is empty")]
    EmptyInfoSet,

    #[error("frozen position {0} carries a nonzero bit")]
    NonzeroFrozenBit(usize),

    #[error("component codes are not nested at length {len}: position {index} is unfrozen in the upper half only")]
    NotNested { len: usize, index: usize },

    #[error("sphere radius must be at least 1")]
    InvalidRadius,

    #[error("no nonzero codeword has weight at most {0}")]
    NothingWithinRadius(u32),

    #[error("more than {0} codewords would be materialized")]
    SetCapExceeded(usize),

    #[error("codeword counter overflowed")]
    CounterOverflow,

    #[error("minimum weight hint {hint} disagrees with the row-weight bound {expected}")]
    InconsistentHint { hint: u32, expected: u32 },

    #[error(
        "component minimum weights ({upper}, {lower}) match no recursion case for d_min {d_min}"
    )]
    UnexpectedCase { d_min: u32, upper: u32, lower: u32 },

    #[error("invalid CRC polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("degenerate outer code: {0}")]
    DegenerateOuterCode(String),

    #[error("invalid index mapping: {0}")]
    InvalidMapping(String),

    #[error("parity-check equations are linearly dependent (rank {rank} of {rows})")]
    RankDeficient { rank: usize, rows: usize },

    #[error("radius escalation passed the code length {0} without finding a nonzero codeword")]
    EscalationOverflow(usize),

    #[error("exhaustive enumeration over 2^{dim} words exceeds the cap 2^{cap}")]
    CapExceeded { dim: usize, cap: usize },

    #[error("malformed document: {0}")]
    Document(String),
}
