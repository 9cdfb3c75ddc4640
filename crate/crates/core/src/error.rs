use thiserror::Error;

/// Failures of the polyhedron kernel and everything built on top of it.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum GeometryError {
    #[error("half-space intersection has no interior")]
    EmptyInterior,
    #[error("polyhedron does not meet the cube window in a solid")]
    EmptyIntersection,
    #[error("intersection is unbounded (bounding-cube faces survive)")]
    Unbounded,
    #[error("bounding half-width must be positive and finite, got {0}")]
    InvalidBound(f64),
    #[error("invalid half-space: {0}")]
    InvalidHalfSpace(String),
    #[error("face {0} is degenerate (collinear vertices)")]
    DegenerateFace(usize),
    #[error("input points are coplanar or too few for a solid hull")]
    DegenerateInput,
    #[error("inconsistent face lattice: {0}")]
    Topology(String),
    #[error("linear program failed: {0}")]
    LinearProgram(String),
    #[error("neighbor cutoff {0} is too small: doubling it changes the cell")]
    CutoffTooSmall(f64),
    #[error("invalid packing: {0}")]
    InvalidPacking(String),
    #[error("unknown packing preset {0:?}")]
    UnknownPreset(String),
    #[error("window of edge length {0} contains no unit ball")]
    EmptyWindow(f64),
}

/// Failures raised while evaluating certificates.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum CertificateError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("dihedral angles sum to {actual}, expected {expected} for this case")]
    CaseSumMismatch { expected: f64, actual: f64 },
    #[error("invalid meeting segment: {0}")]
    InvalidSegment(String),
    #[error("cells do not partition the cube: {0}")]
    NotAPartition(String),
    #[error("diameter {0} is below 2; no cell containing a unit ball is that small")]
    InvalidDiameter(f64),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Failures of the tangent-polytope search.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum OptimizeError {
    #[error("need at least 4 faces, got {0}")]
    TooFewFaces(usize),
    #[error("need at least one restart")]
    NoRestarts,
    #[error("no restart reached a bounded polytope")]
    NoBoundedCandidate,
    #[error("normals do not positively span 3-space")]
    NotSpanning,
}
