use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty coefficient list")]
    EmptyPolynomial,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("not an Alexander polynomial: {0}")]
    NotAlexander(String),
    #[error("degree d must be positive")]
    ZeroDegree,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("gcd({0}, {1}) != 1")]
    NotCoprime(i64, i64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("coefficient overflow in {0}")]
    Overflow(&'static str),
    #[error("cannot factor {0}: cofactor exceeds 64 bits")]
    FactorTooLarge(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("signature evaluated at a jump point t = {0}")]
    JumpPoint(String),
    #[error("degenerate form: det(A - tA^T) vanishes identically")]
    DegenerateForm,
    #[error("not an L-space knot polynomial: {0}")]
    NotLSpaceKnot(String),
    #[error("surgery coefficient {n} is too small for the large-surgery formula (need n >= {min})")]
    SurgeryTooSmall { n: u64, min: u64 },
    #[error("group of order {0} exceeds the enumeration bound")]
    GroupTooLarge(u64),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("unsupported covering degree {0}; only d = 2 is supported for the L(m,J) family")]
    UnsupportedDegree(u64),
    #[error("{0} is not in P_2(D): it divides R_2 of a polynomial in D")]
    NotInPrimeSet(u64),
    #[error("|H_1(M_0)| = {order} is not coprime to q = {q}")]
    CoprimalityViolation { order: String, q: u64 },
    #[error("the Alexander polynomial of J0 is not in D")]
    J0NotInSet,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input at {path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("precision limit reached while separating roots")]
    PrecisionExhausted,
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            msg: msg.into(),
        }
    }

    /// True when the error is caused by the caller's input rather than by a
    /// resource limit of the computation.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::Overflow(_) | Error::FactorTooLarge(_) | Error::PrecisionExhausted
        )
    }
}
