//! Error type shared by all modules.

use thiserror::Error;

/// Errors raised by geometry, enumeration, series algebra, and reporting.
#[derive(Debug, Error)]
pub enum Error {
    /// Dimension outside the supported range 1..=15.
    #[error("dimension {0} outside supported range 1..={max}", max = crate::lattice::MAX_DIM)]
    InvalidDimension(usize),

    /// Truncation order outside the supported range 0..=31.
    #[error("truncation order {0} outside supported range 0..={max}", max = crate::series::MAX_ORDER)]
    InvalidOrder(usize),

    /// A point expected to be a unit vector is not.
    #[error("point {0} is not a unit vector")]
    NotAUnitVector(String),

    /// A point expected to be a vertex of a cluster is not.
    #[error("point {0} is not a vertex of the cluster")]
    NotAVertex(String),

    /// Predicted enumeration size exceeds the configured ceiling.
    #[error(
        "predicted {predicted} clusters exceeds ceiling {ceiling} (model {model}, d={d}, n={n})"
    )]
    ResourceCeiling {
        model: &'static str,
        d: usize,
        n: usize,
        predicted: u64,
        ceiling: u64,
    },

    /// Bond set that does not form a valid cluster for the model.
    #[error("invalid cluster: {0}")]
    InvalidCluster(String),

    /// exp() of a series whose constant term is nonzero.
    #[error("exp requires zero constant term, found {0}")]
    ExpConstantTerm(String),

    /// Binary operation on site series over different lattices.
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    /// Lace construction below the minimal interval length.
    #[error("lace interval [0,{0}] too short, need n >= 2")]
    LaceIntervalTooShort(usize),

    /// Expansion table requested beyond the tabulated order.
    #[error("expansion order {0} exceeds tabulated maximum 6")]
    ExpansionOrderTooLarge(usize),

    /// Named verification suite does not exist.
    #[error("unknown verification suite '{0}'")]
    UnknownSuite(String),

    /// A verification suite found a failing identity.
    #[error("verification failed: {identity} at {location}: {lhs} != {rhs}")]
    VerificationFailed {
        identity: String,
        location: String,
        lhs: String,
        rhs: String,
    },

    /// Cache entry is malformed or belongs to a different key.
    #[error("cache entry {path}: {reason}")]
    CacheEntry { path: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
