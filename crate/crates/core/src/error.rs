use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("invalid moment sequence: {0}")]
    InvalidMoments(&'static str),

    #[error("moment sequence is complex-valued; use the circle path")]
    ComplexMoments,

    #[error("wrong moment domain: expected {expected}")]
    WrongDomain { expected: &'static str },

    #[error("half-width must be positive, got {0}")]
    NonPositiveHalfWidth(f64),

    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("order {requested} exceeds available order {available}")]
    OrderTooLarge { requested: usize, available: usize },

    #[error("weight {weight:e} at index {index} is below -tol; no measure matches these moments at this order")]
    NegativeWeight { index: usize, weight: f64 },

    #[error("not completely monotonic: (-1)^k (Δ^k m)_n = {value:e} at (k, n) = ({k}, {n})")]
    NotCompletelyMonotonic { k: usize, n: usize, value: f64 },

    #[error("measure has no positive mass")]
    EmptyMeasure,

    #[error("measure must have unit mass, got {0}")]
    NotNormalized(f64),

    #[error("quantile symbols need real atom locations")]
    ComplexSupport,

    #[error("Laurent degree {degree} exceeds moment order {available}")]
    DegreeOverflow { degree: usize, available: usize },

    #[error("angle {angle} of member {member}, index {index} lies outside [-pi, pi]")]
    AngleOutOfRange { member: usize, index: usize, angle: f64 },

    #[error("negative powers requested but member {member} has a zero eigenvalue")]
    ZeroEigenvalue { member: usize },

    #[error("matrix {matrix} is not Hermitian: entry ({row}, {col}) deviates by {deviation:e}")]
    NotHermitian { matrix: usize, row: usize, col: usize, deviation: f64 },

    #[error("matrix {matrix} is not square")]
    NotSquare { matrix: usize },

    #[error("eigen-decomposition residual {residual:e} exceeds 1e-8 * ||A||")]
    EigenResidual { residual: f64 },

    #[error("need at least {need} family members, have {have}")]
    TooFewMembers { have: usize, need: usize },

    #[error("family sizes must be strictly increasing (member {index})")]
    SizesNotIncreasing { index: usize },

    #[error("member {index} has {found} eigenvalues, expected {expected}")]
    WrongEigenvalueCount { index: usize, found: usize, expected: usize },

    #[error("member {index} of a hermitian-real family has a non-real eigenvalue")]
    NonRealEigenvalue { index: usize },

    #[error("operation needs a {expected} family")]
    KindMismatch { expected: &'static str },

    #[error("traces not converged at order k={order}")]
    NotConverged { order: i64 },

    #[error("relative modulus spread {spread:e} exceeds 1e-6")]
    ModulusSpread { spread: f64 },

    #[error("exact arithmetic needs an exact-form member")]
    InexactMember,

    #[error("exact roots are not closed under conjugation sqrt(k) -> -sqrt(k)")]
    NotConjugateClosed,

    #[error("exact roots of one member must share a radicand ({0} vs {1})")]
    MixedRadicand(i64, i64),

    #[error("invalid base {0}")]
    InvalidBase(String),

    #[error("exact identity failed: {what} at index {index}")]
    IdentityMismatch { what: &'static str, index: usize },
}
