use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group word: {0}")]
    InvalidWord(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("cyclotomic moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("not a complex: d∘d != 0 starting at degree {degree}")]
    NotAComplex { degree: i64 },

    #[error("not a chain map: fails to commute with the differential in degree {degree}")]
    NotAChainMap { degree: i64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("group mismatch: {0}")]
    SpecMismatch(String),

    #[error("not acyclic in degree {degree} (rank defect {defect})")]
    NotAcyclic { degree: i64, defect: usize },

    #[error("invalid simple operation: {0}")]
    InvalidOp(String),

    #[error("step {step}: {source}")]
    ReplayFailed { step: usize, source: Box<Error> },

    #[error("{q} is not coprime to {p}")]
    NotCoprime { q: i64, p: i64 },

    #[error("lens spaces have different p: {0} vs {1}")]
    LensModulusMismatch(i64, i64),

    #[error("p = {0} is not prime; the free-product scenario only supports prime p")]
    NonPrimeUnsupported(i64),

    #[error("torsion and arithmetic classification disagree for {0}")]
    CrossCheckFailed(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
