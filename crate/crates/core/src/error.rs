use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for type {family}: {constraint}")]
    InvalidRank {
        family: String,
        rank: usize,
        constraint: &'static str,
    },
    #[error("unsupported algebra: {0}")]
    Unsupported(String),
    #[error("Weyl group of order {order} exceeds the enumeration bound {bound}")]
    WeylGuard { order: u64, bound: u64 },
    #[error("rank {rank} exceeds the supported bound {bound}")]
    RankGuard { rank: usize, bound: usize },
    #[error("variable {0} does not belong to the expected variable set")]
    ForeignVariable(String),
    #[error("letter {0} is not allowed here")]
    InvalidLetter(String),
    #[error("unexpected zero polynomial")]
    ZeroPolynomial,
    #[error("division is not exact")]
    NotExact,
    #[error("t-power {power} of {letter} exceeds the working cap {cap}")]
    TPowerOverflow {
        letter: String,
        power: u32,
        cap: u32,
    },
    #[error("element is not in PBW normal form")]
    NonCanonical,
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("pole of the projector factor for root {root}: denominator term j = {j} vanishes at weight {weight}")]
    Pole {
        root: usize,
        j: usize,
        weight: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
