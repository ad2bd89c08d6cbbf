use thiserror::Error;

/// Errors shared by all algorithm modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point set must not be empty")]
    EmptyPointSet,
    #[error("coordinate is not finite")]
    NonFiniteCoordinate,
    #[error("point ({u}, {v}) lies on or outside the unit disk")]
    OutsideDisk { u: f64, v: f64 },
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("tree has no edges")]
    EdgelessTree,
    #[error("hierarchy does not match the instance: {0}")]
    HierarchyMismatch(String),
    #[error("points {a} and {b} coincide")]
    DuplicatePoints { a: usize, b: usize },
    #[error("quadtree depth limit exceeded; input contains near-duplicate points")]
    DepthLimitExceeded,
    #[error("sibling clusters have intersecting convex hulls")]
    SiblingHullsIntersect,
    #[error("need at least {needed} sites, got {got}")]
    TooFewSites { needed: usize, got: usize },
    #[error("at most {limit} points supported here, got {got}")]
    TooManyPoints { limit: usize, got: usize },
    #[error("delta {delta} outside the supported range [0.1, 10]")]
    DeltaOutOfRange { delta: f64 },
    #[error("points {a} and {b} violate the required separation (distance {distance})")]
    SeparationViolated { a: usize, b: usize, distance: f64 },
    #[error("perimeter objective requires planar points")]
    ObjectiveMismatch,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("generated pants curves failed the disjointness check")]
    PantsDisjointness,
}

pub type Result<T> = std::result::Result<T, Error>;
