use thiserror::Error;

/// Errors shared across the geometry, tessellation and analysis modules.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("vector norm too small; direction undefined")]
    ZeroVector,
    #[error("points are antipodal; spherical midpoint is not unique")]
    AntipodalPair,
    #[error("triangle is degenerate (coincident vertices or one great circle)")]
    DegenerateTriangle,
    #[error("point is not inside the open hemisphere around the projection base")]
    OutOfHemisphere,
    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("empty point set")]
    EmptySet,
    #[error("input points do not span three dimensions")]
    DegenerateHull,
    #[error("origin is not strictly interior to the hull")]
    OriginNotInterior,
    #[error("argument {value} is outside the valid range for {what}")]
    OutOfRange { what: &'static str, value: f64 },
    #[error("point set is not a complete dissection of the face")]
    IncompleteLevel,
    #[error("curves do not cross inside the scanned interval")]
    RootNotBracketed,
}

pub type Result<T> = std::result::Result<T, GeomError>;
