use thiserror::Error;

/// Failures raised by the exact arithmetic layer.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by the zero polynomial")]
    ZeroPolynomialDivisor,
    #[error("singular matrix: no nonzero pivot in column {column}")]
    SingularMatrix { column: usize },
    #[error("zero divisor encountered: the modulus is reducible")]
    ReducibleModulus,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
}

/// Top-level error for the field, group and sequence pipeline.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("invalid defining polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("polynomial is inseparable (gcd(F, F') has degree {0})")]
    Inseparable(usize),
    #[error("image is not a root of the defining polynomial (residual {residual})")]
    NotARoot { residual: String },
    #[error("could not certify {expected} automorphisms: found {found}")]
    Automorphisms { expected: usize, found: usize },
    #[error("automorphism list is not closed under composition: {0} o {1} is missing")]
    NotClosed(usize, usize),
    #[error("root isolation failed at {bits} bits")]
    RootIsolation { bits: u64 },
    #[error("element is not a normal basis generator (det of the group matrix vanishes)")]
    NotNormalBasis,
    #[error("no normal basis generator found after {0} trials")]
    NoGenerator(usize),
    #[error("character table: {0}")]
    CharacterTable(String),
    #[error("symbolic group determinant limited to order {cap}, group has order {order}")]
    SymbolicCap { cap: usize, order: usize },
    #[error("group is not abelian")]
    NotAbelian,
    #[error("irrational value where a rational was expected: {0}")]
    Irrational(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("configuration error at {path}: {message}")]
    Config { path: String, message: String },
}

impl Error {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config { path: path.into(), message: message.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
