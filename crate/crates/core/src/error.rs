use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The lattice parameter must satisfy |a| ≥ 5 for the form to be hyperbolic.
    #[error("invalid parameter a = {0}: the constraint |a| >= 5 is required (signature (1,1))")]
    InvalidParameter(BigInt),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{0} is a perfect square; the Pell equation needs a nonsquare D")]
    PerfectSquare(BigInt),

    #[error("invalid Pell problem: {0}")]
    InvalidPell(String),

    #[error("vector ({0}, {1}) is not a nodal class")]
    NotNodal(BigInt, BigInt),

    #[error("polynomial has no real root above 1")]
    NoRootAboveOne,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("width must be positive")]
    NonPositiveWidth,

    #[error("degenerate quadratic form")]
    DegenerateForm,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// An internal consistency guard failed. Seeing this means a bug.
    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("invalid scan range {from}..{to}: need 5 <= from <= to <= 10000")]
    InvalidRange { from: i64, to: i64 },
}
