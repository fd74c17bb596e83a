use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The input point set does not span the required dimension.
    #[error("degenerate point set: affine rank {rank}, need {needed}")]
    DimensionDeficient { rank: usize, needed: usize },

    #[error("edge graph is disconnected")]
    Disconnected,

    #[error("vertex cycle is not strictly convex and counterclockwise")]
    NotConvex,

    #[error("point {0:?} is not a vertex of the polygon")]
    NotAVertex([i64; 2]),

    /// A Minkowski sum does not fit in the grid after translation.
    #[error("sum spans coordinate range {range:?} which exceeds grid size {k}")]
    DoesNotFit { range: [i64; 3], k: i64 },

    #[error("zero vector in generator set")]
    ZeroGenerator,

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("certificate check failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
