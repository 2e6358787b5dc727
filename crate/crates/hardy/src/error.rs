use thiserror::Error;

/// Failures raised by the exact and spectral backends.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("evaluation at a pole {0}")]
    PoleEvaluation(String),
    #[error("function has a pole on the real line at {0}")]
    RealPole(String),
    #[error("function is not proper: {0}")]
    NotProper(String),
    #[error("symbol has a zero or pole on the real line at {0}")]
    BoundaryZeroOrPole(String),
    #[error("symbol has {zeros} zeros but {poles} poles: no finite nonzero limit at infinity")]
    DegreeMismatchAtInfinity { zeros: usize, poles: usize },
    #[error("evaluation at an atom of the singular measure at {0}")]
    AtomEvaluation(f64),
    #[error("point {0} lies in the lower half-plane")]
    LowerHalfPlane(String),
    #[error("operation requires a non-constant inner function")]
    ConstantInner,
    #[error("split point {0} is an atom")]
    SplitPointIsAtom(f64),
    #[error("inner function is not normalized at {a}: value {value}")]
    NotNormalizedAtA { a: f64, value: String },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("model space is infinite-dimensional")]
    InfiniteDimensional,
    #[error("closed-form derivative unavailable: {0}")]
    DerivativeUnavailable(String),
    #[error("function is not a member of the target space (residual {0:e})")]
    NotAMember(f64),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("the Toeplitz kernel is trivial")]
    TrivialKernel,
    #[error("kernel dimension {dim} does not exceed the Blaschke degree {degree}")]
    KernelTooSmall { dim: usize, degree: usize },
    #[error("the zero function has no minimal kernel")]
    ZeroFunction,
    #[error("an atom lies on grid node {0}")]
    AtomOnGridNode(usize),
    #[error("invalid grid size {0}: must be a power of two >= 8")]
    InvalidGrid(usize),
    #[error("invalid data: {0}")]
    InvalidData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
