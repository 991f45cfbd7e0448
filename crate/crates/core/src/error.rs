use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Dynkin type `{0}`")]
    InvalidType(String),

    #[error("invalid rank {rank} for type {ty}: {reason}")]
    InvalidRank {
        ty: String,
        rank: usize,
        reason: &'static str,
    },

    #[error("{what}: expected order {expected} exceeds cap {cap}")]
    CapExceeded { what: String, expected: u128, cap: u64 },

    #[error("{what}: size grew past cap {cap} before closing")]
    CapReached { what: String, cap: u64 },

    #[error("matrix is not invertible over the integers (det = {0})")]
    NotUnimodular(i128),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix entry {0} is outside the supported range for group elements")]
    EntryOverflow(i64),

    #[error("group average is not integral in sector {sector} at (p,q) = ({p},{q}); this is a bug")]
    NonIntegralAverage { sector: usize, p: usize, q: usize },

    #[error("not a diagram morphism: {0}")]
    NotDiagramMorphism(String),

    #[error("polynomial has a negative coefficient at (p,q) = ({p},{q})")]
    NegativeCoefficient { p: u32, q: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("colength not stabilized at truncation {truncation}: dim {dim} vs {next_dim} at {next}", next = truncation + 1)]
    ColengthNotStabilized {
        truncation: usize,
        dim: usize,
        next_dim: usize,
    },

    #[error("pair is not nilpotent; the cyclicity criterion needs punctual support")]
    NotNilpotent,

    #[error("pair does not commute")]
    NotCommuting,

    #[error("invertibility undecided: {0}")]
    Undecided(String),

    #[error("propagation failed after {attempts} attempts: {reason}")]
    PropagationFailed { attempts: usize, reason: String },

    #[error("torsion point: {0}")]
    Point(String),
}
