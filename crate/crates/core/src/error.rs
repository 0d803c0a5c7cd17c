use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element or character {coords:?} does not belong to a group with factors {factors:?}")]
    NotInGroup { coords: Vec<i64>, factors: Vec<i64> },
    #[error("inertia datum must be a nonzero element")]
    ZeroInertia,
    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    BoundExceeded { order: u64, bound: u64 },
    #[error("invalid base: {0}")]
    InvalidBase(String),
    #[error("class has length {got}, base has Néron–Severi rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("inertia data do not generate the group (cover is not totally ramified)")]
    NotTotallyRamified,
    #[error("reduced equation {j} has no integral solution: residue {residue:?} mod {modulus}")]
    Infeasible { j: usize, residue: Vec<i64>, modulus: i64 },
    #[error("reduced relation {j} fails: {modulus}·η_{j} ≠ Σ λ ξ")]
    ReducedRelation { j: usize, modulus: i64 },
    #[error("branch divisors {subset:?} may not meet: inertia sum is not injective")]
    NotInjective { subset: Vec<usize> },
    #[error("invalid cover data: {0}")]
    InvalidCover(String),
    #[error("dimension table has unknown entries for characters {0:?}")]
    UnknownDims(Vec<Vec<i64>>),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parity error: {0}")]
    Parity(String),
    #[error("trace check failed for n = {n} at step {step}: {reason}")]
    TraceMismatch { n: u32, step: String, reason: String },
    #[error("system too large: {0}")]
    SizeBound(String),
}
