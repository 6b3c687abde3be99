use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degenerate divisor: linear form normalizes to zero or is not linear")]
    DegenerateDivisor,
    #[error("not downward closed: {0}")]
    NotDownwardClosed(String),
    #[error("invalid Hessenberg function: {0}")]
    InvalidHessenberg(String),
    #[error("wrong length: expected {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("derivation is not tangent to the quotient")]
    NotTangent,
    #[error("derivation is not homogeneous")]
    NonHomogeneous,
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("unsupported restriction: {0}")]
    UnsupportedRestriction(String),
    #[error("remainder is not a multiple of b_nu modulo the added root: {0}")]
    Prop23Violated(String),
    #[error("rank deficient: expected rank {expected}, got {got}")]
    RankDeficient { expected: usize, got: usize },
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("height undefined at 0: the ideal is empty")]
    HeightUndefined,
    #[error("guardrail exceeded: {0}")]
    Guardrail(String),
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("derivation psi_{{{i},{j}}} is above the symbolic degree budget {budget}")]
    NotMaterialized { i: usize, j: usize, budget: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
