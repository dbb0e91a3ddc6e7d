use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} is too small, at least 2 is required")]
    DimensionTooSmall(usize),
    #[error("non-finite coordinate or parameter")]
    NonFinite,
    #[error("vector norm is below the degeneracy threshold")]
    ZeroVector,
    #[error("vector lies in the span of the basis")]
    DependentVector,
    #[error("vector is not unit length (norm {0})")]
    NotUnit(f64),
    #[error("focal points coincide")]
    CoincidentFoci,
    #[error("2a equals the focal distance, each sheet degenerates to a ray")]
    DegenerateRays,
    #[error("2a equals the focal distance, the ellipsoid degenerates to a segment")]
    DegenerateSegment,
    #[error("invalid metric constant: {0}")]
    InvalidConstant(String),
    #[error("cone eccentricity must exceed 1, got {0}")]
    InvalidEccentricity(f64),
    #[error("`{op}` is not defined for this conic or sheet")]
    KindMismatch { op: &'static str },
    #[error("a sphere has no directrix")]
    UndefinedDirectrix,
    #[error("empty intersection: {0}")]
    EmptyIntersection(String),
    #[error("degenerate slice ({0}) has no conic with positive parameters")]
    DegenerateOutput(&'static str),
    #[error("ball {larger} contains ball {smaller}, their bisector is empty")]
    ContainedBall { larger: usize, smaller: usize },
    #[error("balls {0} and {1} share a center")]
    CoincidentCenters(usize, usize),
    #[error("ball centers are affinely dependent")]
    AffineDependence,
    #[error("all radii are equal")]
    AllRadiiEqual,
    #[error("{count} balls exceed the limit of {limit} in this dimension")]
    TooManyBalls { count: usize, limit: usize },
    #[error("not enough balls: {0}")]
    TooFewBalls(usize),
    #[error("invalid radius {0}")]
    InvalidRadius(f64),
    #[error("no tangent circle for any sign pattern")]
    InfeasibleConfiguration,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable name, used in JSON error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::DimensionTooSmall(_) => "DimensionTooSmall",
            Error::NonFinite => "NonFinite",
            Error::ZeroVector => "ZeroVector",
            Error::DependentVector => "DependentVector",
            Error::NotUnit(_) => "NotUnit",
            Error::CoincidentFoci => "CoincidentFoci",
            Error::DegenerateRays => "DegenerateRays",
            Error::DegenerateSegment => "DegenerateSegment",
            Error::InvalidConstant(_) => "InvalidConstant",
            Error::InvalidEccentricity(_) => "InvalidEccentricity",
            Error::KindMismatch { .. } => "KindMismatch",
            Error::UndefinedDirectrix => "UndefinedDirectrix",
            Error::EmptyIntersection(_) => "EmptyIntersection",
            Error::DegenerateOutput(_) => "DegenerateOutput",
            Error::ContainedBall { .. } => "ContainedBall",
            Error::CoincidentCenters(..) => "CoincidentCenters",
            Error::AffineDependence => "AffineDependence",
            Error::AllRadiiEqual => "AllRadiiEqual",
            Error::TooManyBalls { .. } => "TooManyBalls",
            Error::TooFewBalls(_) => "TooFewBalls",
            Error::InvalidRadius(_) => "InvalidRadius",
            Error::InfeasibleConfiguration => "InfeasibleConfiguration",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// True for errors that describe a geometrically empty answer rather
    /// than malformed input.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::EmptyIntersection(_) | Error::ContainedBall { .. } | Error::InfeasibleConfiguration
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
