use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("coefficient not representable: {0}")]
    NotRepresentable(String),

    #[error("polynomials live in different rings")]
    ContextMismatch,

    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("ideal is not zero-dimensional (dimension {0})")]
    NotZeroDimensional(i64),

    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: String },

    #[error("non-generic draws persisted after retries: {0}")]
    NonGeneric(String),

    #[error("{what}: declared dimension {declared}, computed {computed}")]
    DimensionMismatch {
        what: String,
        declared: i64,
        computed: i64,
    },

    #[error("missing link entry E[{low}][{high}]")]
    MissingLink { low: String, high: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
