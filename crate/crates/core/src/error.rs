use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("vertex centroid is not the origin")]
    NotCentered,
    #[error("vertices do not affinely span 3-space")]
    Degenerate,
    #[error("{0} vertices exceed the supported maximum of {max}", max = crate::geometry::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("vertex index {index} out of range for a solid with {len} vertices")]
    VertexOutOfRange { index: usize, len: usize },
    #[error("permutation does not come from an orthogonal map")]
    NotAnIsometry,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("statistics were built over different solids or plane sets ({0} vs {1})")]
    ModelMismatch(String, String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SectionError {
    #[error("cut epsilon {epsilon} outside (0, {max}) (half the edge length)")]
    EpsilonOutOfRange { epsilon: f64, max: f64 },
    #[error("ball epsilon {0} must be positive")]
    BallEpsilon(f64),
    #[error("sampling radius {radius} below circumradius {circumradius}")]
    RadiusTooSmall { radius: f64, circumradius: f64 },
    #[error("distributions were built with different binning or quantum")]
    BinningMismatch,
    #[error("distributions were built over different solids or epsilons")]
    SetupMismatch,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
