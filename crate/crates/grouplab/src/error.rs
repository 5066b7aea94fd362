use num_bigint::BigUint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("element is not a member of the group")]
    NotAMember,

    #[error("given generators do not lie in the stated parent group")]
    NotASubgroup,

    #[error("subgroup is not normal in its parent")]
    NotNormal,

    #[error("group order {order} exceeds cap {cap}")]
    OrderExceedsCap { order: BigUint, cap: u64 },

    #[error("coset index {index} exceeds cap {cap}")]
    IndexExceedsCap { index: BigUint, cap: u64 },

    #[error("resource bound exceeded: {0}")]
    ResourceExceeded(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
