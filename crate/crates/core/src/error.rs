use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element does not lie in the ambient group: {0}")]
    ForeignElement(String),
    #[error("{n} does not divide the group order {order}")]
    OrderDoesNotDivide { n: BigInt, order: BigInt },
    #[error("modulus {0} is not a prime power")]
    NotPrimePower(BigInt),
    #[error("group too large for enumeration: {0}")]
    TooLarge(String),
    #[error("invalid linking form: {0}")]
    InvalidForm(String),
    #[error("invariant-only enumeration requested but no deck action is declared")]
    MissingDeckAction,
    #[error("prime {p} does not divide the winding number {w}")]
    PrimeDoesNotDivide { p: u64, w: i64 },
    #[error("invalid pattern profile: {0}")]
    InvalidProfile(String),
    #[error("matrix is singular")]
    Singular,
    #[error("cover matrix needs p >= 2, got {0}")]
    CoverDegree(usize),
    #[error("determinant self-check failed: {0}")]
    SelfCheck(String),
    #[error("invalid Seifert matrix: {0}")]
    InvalidSeifert(String),
    #[error("invalid root of unity {k}/{n}")]
    InvalidRoot { k: u64, n: u64 },
    #[error("signature requested at a jump of the signature function ({k}/{n})")]
    AtJump { k: u64, n: u64 },
    #[error("invalid Legendrian front: {0}")]
    InvalidFront(String),
    #[error("Ng-Traynor formula needs tb(J) = 0, got {0}")]
    NonzeroCompanionTb(i64),
    #[error("invalid tau data: {0}")]
    InvalidTau(String),
    #[error("invalid evidence database: {0}")]
    InvalidEvidence(String),
    #[error("malformed input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
