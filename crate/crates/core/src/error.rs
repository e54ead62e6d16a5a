use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field description: {0}")]
    InvalidField(String),
    #[error("modulus is not monic of degree {0}")]
    NonMonicModulus(usize),
    #[error("modulus is reducible")]
    ReducibleModulus,
    #[error("field is too large: {0} elements")]
    FieldTooLarge(u64),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("constant polynomial has no irreducibility verdict")]
    ConstantPolynomial,
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("basis is linearly dependent")]
    DependentBasis,
    #[error("empty basis")]
    EmptyBasis,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not an element of the subspace")]
    NotInSubspace,
    #[error("{what} of {size} exceeds the configured cap {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },
    #[error("construction hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("{0} is not prime (norm-form degree)")]
    NonPrimeDegree(usize),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("subspace is not all-singular")]
    NotAllSingular,
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("instance shape mismatch: {0}")]
    InstanceShape(String),
    #[error("root search would need the randomized path, which is disabled")]
    RandomizedDisabled,
    #[error("malformed input: {0}")]
    Format(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
