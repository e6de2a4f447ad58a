use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    #[error("point at infinity has no affine coordinates")]
    PointAtInfinity,
    #[error("cannot join two coincident points")]
    DegenerateJoin,
    #[error("cannot meet two coincident lines")]
    DegenerateMeet,
    #[error("polygon is not convex")]
    NotConvex,
    #[error("polygon has {n} vertices, at least {min} required")]
    TooFewVertices { n: usize, min: usize },
    #[error("vertices {index} and {index}+1 coincide")]
    CoincidentVertices { index: usize },
    #[error("vertices around index {index} are collinear (zero consecutive-triple determinant)")]
    DegenerateTriple { index: usize },
    #[error("pentagram image is degenerate: output vertices {index} and {index}+1 coincide")]
    DegenerateOutput { index: usize },
    #[error("iteration failed at step {step}: {source}")]
    IterationFailed { step: usize, source: Box<Error> },
    #[error("no convergence after {steps} iterations")]
    IterationLimitExceeded { steps: usize },
    #[error("transformation matrix is singular")]
    SingularTransform,
    #[error("eigenvalue {lambda} has a kernel of dimension greater than one")]
    NonSimpleEigenvalue { lambda: f64 },
    #[error("{lambda} is not an eigenvalue (smallest pivot {pivot:e})")]
    NotAnEigenvalue { lambda: f64, pivot: f64 },
    #[error("eigenvector for {lambda} lies on the line at infinity")]
    EigenvectorAtInfinity { lambda: f64 },
    #[error("no eigenvector projects into the convex hull")]
    NoCandidateInHull,
    #[error("{count} eigenvectors project into the convex hull")]
    AmbiguousSelection { count: usize },
    #[error("polygon is not axis-aligned: {0}")]
    NotAxisAligned(String),
    #[error("operation needs {expected}, got n = {n}")]
    UnsupportedSize { n: usize, expected: &'static str },
}

impl Error {
    /// Wraps an error raised while computing step `step` of an iteration.
    pub fn at_step(self, step: usize) -> Self {
        Error::IterationFailed { step, source: Box::new(self) }
    }

    /// Innermost cause, looking through [`Error::IterationFailed`].
    pub fn root(&self) -> &Error {
        match self {
            Error::IterationFailed { source, .. } => source.root(),
            e => e,
        }
    }
}
