use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed group spec `{0}`: {1}")]
    GroupSpec(String, String),
    #[error("table fails group axioms: {0}")]
    GroupAxioms(String),
    #[error("group order {order} exceeds cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("invalid G-set: {0}")]
    InvalidGSet(String),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("not divisible: {0}")]
    Divisibility(String),
    #[error("invalid homomorphism: {0}")]
    Homomorphism(String),
    #[error("invalid ideal witness: {0}")]
    Witness(String),
    #[error("not a free Tambara element: {0}")]
    NotFree(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable code, used by the CLI diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::GroupSpec(..) => "E_GROUP_SPEC",
            Error::GroupAxioms(_) => "E_GROUP_AXIOMS",
            Error::OrderCap { .. } => "E_ORDER_CAP",
            Error::SizeCap(_) => "E_SIZE_CAP",
            Error::NotSubgroup(_) => "E_NOT_SUBGROUP",
            Error::InvalidGSet(_) => "E_GSET",
            Error::NotEquivariant(_) => "E_EQUIVARIANCE",
            Error::ObjectMismatch(_) => "E_OBJECT_MISMATCH",
            Error::Divisibility(_) => "E_DIVISIBILITY",
            Error::Homomorphism(_) => "E_HOMOMORPHISM",
            Error::Witness(_) => "E_WITNESS",
            Error::NotFree(_) => "E_NOT_FREE",
            Error::Parse(_) => "E_PARSE",
            Error::Io(_) => "E_IO",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
