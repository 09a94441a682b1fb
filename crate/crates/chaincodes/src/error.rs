use thiserror::Error;

/// Errors raised by ring construction, linear algebra and code operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("length {ell} is not coprime to q = {q}")]
    NotCoprime { ell: usize, q: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("ring of size 2^{bits} exceeds the limit 2^{limit}")]
    RingTooLarge { bits: u32, limit: u32 },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("element is not a unit")]
    NotUnit,

    #[error("no root of unity of order {ell}: it does not divide {order}")]
    NoRootOfUnity { ell: usize, order: u64 },

    #[error("residue {value} is out of range for length {ell}")]
    OutOfRange { value: usize, ell: usize },

    #[error("set is not q-closed")]
    NotClosed,

    #[error("{0} is not a coset representative")]
    UnknownRepresentative(usize),

    #[error("level {level} is out of range 0..={s}")]
    LevelOutOfRange { level: u32, s: u32 },

    #[error("malformed partition string: {0}")]
    MalformedPartition(String),

    #[error("operands belong to different contexts")]
    ContextMismatch,

    #[error("rank {rank} exceeds length {ell}")]
    RankExceedsLength { rank: usize, ell: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("span is not closed under the cyclic shift")]
    NotCyclic,

    #[error("enumeration of {count} items exceeds the bound {limit}")]
    EnumerationBound { count: String, limit: u64 },

    #[error("golden data: {0}")]
    Golden(String),
}

impl Error {
    /// True for errors caused by a configured resource bound.
    pub fn is_resource_bound(&self) -> bool {
        matches!(self, Error::RingTooLarge { .. } | Error::EnumerationBound { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
