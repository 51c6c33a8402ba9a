//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid extension degree {0}")]
    BadExtensionDegree(usize),
    #[error("field p^d too large with p = {p}, d = {d}")]
    FieldTooLarge { p: u64, d: usize },
    #[error("modulus is not irreducible")]
    ReducibleModulus,
    #[error("got {got} coefficients for an extension of degree {degree}")]
    BadCoefficients { got: usize, degree: usize },
    #[error("no m-th root of unity with m = {m} over F_{{{p}^{d}}}")]
    NoSuchRootOfUnity { m: u64, p: u64, d: usize },
    #[error("invalid root order m = {m} for p = {p}")]
    InvalidRootOrder { p: u64, m: u64 },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormsError {
    #[error("the zero form is not a differential form here")]
    ZeroForm,
    #[error("denominator does not split over the ambient field; extend the field")]
    ExtendField,
    #[error("pole of order {order} at {point}; at most simple poles allowed")]
    HigherOrderPole { point: String, order: i64 },
    #[error("form is not logarithmic: {reason}")]
    NotLogarithmic { reason: String },
    #[error("form is not an eigenvector under z -> zeta z")]
    NotEquivariant,
    #[error("form is not good: {reason}")]
    NotGood { reason: String },
    #[error("unique zero is not at infinity; normalize coordinates first")]
    ZeroNotAtInfinity,
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Types(#[from] TypesError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TypesError {
    #[error("residue tuple must be nonempty")]
    EmptyType,
    #[error("residue entries must be nonzero mod p")]
    ZeroEntry,
    #[error("for m = 1 the residues must sum to zero mod p")]
    NonzeroSum,
    #[error("m = {m} with m > 1 requires m | p - 1 (p = {p})")]
    NoRootOfUnity { p: u64, m: u64 },
    #[error("operation requires m = {required}, got m = {got}")]
    WrongSymmetryOrder { required: u64, got: u64 },
    #[error("lift entries must be nonzero")]
    ZeroLiftEntry,
    #[error("lift entries must sum to zero")]
    LiftNotZeroSum,
    #[error("lift needs at least two entries")]
    LiftTooShort,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("conductor h = {h} is divisible by p = {p}")]
    ConductorDivisibleByP { p: u64, h: u64 },
    #[error("m = {m} is divisible by p = {p}")]
    OrderDivisibleByP { p: u64, m: u64 },
    #[error("parameters must be positive")]
    NonPositive,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DessinError {
    #[error("images are not a bijection on 1..n")]
    NotBijective,
    #[error("cycle parts must be positive")]
    ZeroPart,
    #[error("cycle types must all sum to the degree {degree}")]
    DegreeMismatch { degree: u64 },
    #[error("triple of cycle types is not realizable as stated: 2 - 2g = {chi} is {problem}")]
    BadGenus { chi: i64, problem: String },
    #[error("a cycle of length {len} does not fit in S_{n}")]
    CycleTooLong { len: u64, n: u64 },
    #[error("the triple product is not the identity")]
    ProductNotIdentity,
    #[error("the triple does not act transitively")]
    NotTransitive,
    #[error("degree {n} exceeds the brute-force cap {cap}")]
    DegreeTooLarge { n: u64, cap: u64 },
    #[error("weighted tree invariant violated: {0}")]
    InvalidTree(String),
    #[error("valency list is not realizable: k (r - 1) > n")]
    NotRealizable,
    #[error("lift are not a valid tree valency list: {0}")]
    BadValencies(String),
    #[error("strand conventions both fail the face condition; invalid tree")]
    FaceConditionFailed,
    #[error(transparent)]
    Types(#[from] TypesError),
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("h = {h} must be a positive multiple of m = {m}")]
    NotMultiple { m: u64, h: u64 },
    #[error("conductor must satisfy h < p (h = {h}, p = {p})")]
    ConductorTooLarge { h: u64, p: u64 },
    #[error("h = {h} is not congruent to -1 mod m = {m}")]
    WrongCongruence { m: u64, h: u64 },
    #[error("m = {m} must divide p - 1 (p = {p})")]
    NotDividing { m: u64, p: u64 },
    #[error("search space of {candidates} candidate tuples exceeds the cap {cap}")]
    SearchSpaceTooLarge { candidates: u128, cap: u128 },
    #[error("the field F_{{{p}^{d}}} has too few points for {r} poles")]
    FieldTooSmall { p: u64, d: usize, r: usize },
    #[error("accepted candidate failed re-verification: {0}")]
    VerificationFailed(String),
    #[error("reduction requires an odd prime")]
    EvenCharacteristic,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error(transparent)]
    Types(#[from] TypesError),
}
