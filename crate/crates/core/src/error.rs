use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring: v = {v}, t = {t} (need t | v, v/t ≥ 2, v ≥ 3, and v/2 ∈ J when v is even)")]
    InvalidRing { v: usize, t: usize },

    #[error("invalid support: {0}")]
    InvalidSupport(String),

    #[error("invalid skeleton: {0}")]
    InvalidSkeleton(String),

    #[error("invalid array: {0}")]
    InvalidArray(String),

    #[error("array is not a quasi-Heffter array: {0}")]
    NotQuasiHeffter(#[from] crate::array::QhViolation),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("cell ({0}, {1}) is not filled")]
    EmptyCell(usize, usize),

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("invalid rotation: {0}")]
    InvalidRotation(String),

    #[error("difference rotation is not a single cycle; translated copies do not form a rotation")]
    NotSingleCycle,

    #[error("({0}, {1}) is not an edge of the multipartite graph")]
    NotAnEdge(usize, usize),

    #[error("face census is inconsistent: Euler characteristic {0}")]
    EulerInconsistent(i64),

    #[error("embeddings live on different rings: (v, t) = ({0}, {1}) vs ({2}, {3})")]
    RingMismatch(usize, usize, usize, usize),

    #[error("arrays have different supports")]
    SupportMismatch,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid experiment: {0}")]
    InvalidExperiment(String),

    #[error("experiment aborted: {0}")]
    ExperimentAborted(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
