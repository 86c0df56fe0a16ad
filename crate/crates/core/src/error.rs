use thiserror::Error;

pub type Result<T, E = DmError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum DmError {
    #[error("set system is improper (no feasible sets)")]
    Improper,
    #[error("ground set size {0} exceeds the supported maximum of 16")]
    GroundSetTooLarge(usize),
    #[error("mask {mask} is out of range for a ground set of size {n}")]
    MaskOutOfRange { mask: u64, n: usize },
    #[error("element {e} is not in the ground set [{n}]")]
    ElementOutOfRange { e: usize, n: usize },
    #[error("ground set sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("set system is not a delta-matroid")]
    NotDeltaMatroid,
    #[error("not a matroid: {0}")]
    NotMatroid(String),
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("mask {0} is feasible")]
    Feasible(u32),
    #[error("induced hypercube degree {found} exceeds the allowed {allowed}")]
    Degree { found: usize, allowed: usize },
    #[error("rank {r} out of range for ground set of size {n}")]
    RankOutOfRange { r: usize, n: usize },
    #[error("vertex set is not stable in J({n},{r})")]
    NotStable { n: usize, r: usize },
    #[error("layer of rank {0} has no bases")]
    EmptyLayer(usize),
    #[error("missing layer of rank {0}")]
    MissingLayer(usize),
    #[error("invalid layer of rank {rank}: {reason}")]
    InvalidLayer { rank: usize, reason: String },
    #[error("level cache is incomplete or corrupt: {0}")]
    IncompleteCache(String),
    #[error("level {requested} requires the explicit long-running flag (limit {limit})")]
    ResourceLimit { requested: usize, limit: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("alpha must lie strictly between 0 and 1, got {0}")]
    AlphaOutOfRange(String),
    #[error("S is inconsistent with the peeling procedure: {0}")]
    InconsistentS(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid set-system document: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
