use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("singular system")]
    Singular,
    #[error("vector {0:?} is not primitive")]
    NotPrimitive(Vec<i64>),

    #[error("non-primitive ray {0}")]
    NonPrimitiveRay(usize),
    #[error("duplicate ray {0}")]
    DuplicateRay(usize),
    #[error("cone {cone} references ray index {index} out of range")]
    InvalidConeIndex { cone: usize, index: usize },
    #[error("cone {0} is not simplicial of full dimension")]
    DegenerateCone(usize),
    #[error("incomplete fan: facet {facet:?} of cone {cone} is not shared by a cone on the other side")]
    Incomplete { cone: usize, facet: Vec<usize> },
    #[error("overlapping cones {0} and {1}")]
    OverlappingCones(usize, usize),
    #[error("already a ray; subdivision is identity")]
    AlreadyRay,
    #[error("vector lies outside the support of the fan")]
    OutsideSupport,

    #[error("divisor has {found} coefficients but the fan has {expected} rays")]
    DivisorLength { expected: usize, found: usize },
    #[error("empty polytope")]
    EmptyPolytope,
    #[error("not full-dimensional")]
    NotFullDimensional,
    #[error("divisor is not ample")]
    NotAmple,
    #[error("slice parameter {0} outside [0, {1}]")]
    SliceOutOfRange(String, String),
    #[error("elimination supports dimension at most {max}, got {dim}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("infeasible for every t")]
    NeverEffective,

    #[error("oracle requires a lattice polytope")]
    NotLatticePolytope,
    #[error("not polynomial: input violates lattice assumption (k = {0})")]
    NotPolynomial(u64),
    #[error("need at least {needed} samples, got {found}")]
    TooFewSamples { needed: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
