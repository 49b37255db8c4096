use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,
    #[error("field order {0} exceeds the supported maximum of 65536")]
    FieldTooLarge(String),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("invalid field specification: {0}")]
    FieldSpec(String),
    #[error("element code {code} out of range for q = {q}")]
    CodeOutOfRange { code: u64, q: u32 },
    #[error("operands belong to different fields")]
    CtxMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error("modulus polynomial must be nonconstant")]
    BadModulusPoly,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("coefficient {code} out of range for q = {q}")]
    CoefficientOutOfRange { code: u64, q: u32 },

    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial where a nonconstant one is required")]
    ConstantInput,

    #[error("requires odd q")]
    EvenCharacteristic,
    #[error("not a prime polynomial (monic irreducible)")]
    NotPrimePoly,
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("prime polynomial must have odd degree")]
    EvenDegree,
    #[error("Euler power is neither 1 nor -1 (internal invariant violated)")]
    InternalNonUnit,

    #[error("invalid half-system: {0}")]
    InvalidHalfSystem(String),
    #[error("too many half-systems to enumerate: 2^{0}")]
    TooManyHalfSystems(u32),
    #[error("n = {n} is below deg f = {deg}")]
    BadRange { n: usize, deg: usize },
    #[error("x^2 is not 1 modulo g^e")]
    PreconditionSquareNotOne,
    #[error("theorem hypothesis does not hold: {0}")]
    NotApplicable(String),
    #[error("a half-system S is required")]
    MissingHalfSystem,
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("sweep refused: estimated {estimate} multiplications exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("unknown theorem tag {0:?}")]
    UnknownTheorem(String),
}
