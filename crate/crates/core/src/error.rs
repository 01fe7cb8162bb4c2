use thiserror::Error;

/// Everything that can go wrong in field arithmetic, geometry, verification
/// and the constructions. Validator failures carry enough context to name
/// the offending object.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // fields
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus is reducible over the base field: {0}")]
    ReducibleModulus(String),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("unsupported size: {0}")]
    UnsupportedSize(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid element code {code} for a field of order {order}")]
    InvalidCode { code: u64, order: u32 },

    // projective geometry
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("instance too large: {count} items exceeds cap {cap}")]
    InstanceTooLarge { count: u128, cap: u128 },
    #[error("dimension out of range: {0}")]
    DimensionOutOfRange(String),
    #[error("point lies in the projection vertex")]
    PointInVertex,
    #[error("bad frame: {0}")]
    BadFrame(String),
    #[error("empty input: {0}")]
    EmptyInput(String),

    // spread
    #[error("subspace is not scattered")]
    NotScattered,
    #[error("plane is skew to regulus element {0}")]
    PlaneMissesRegulus(usize),
    #[error("internal consistency failure: plane section of a regulus not recognized ({0})")]
    UnrecognizedIntersection(String),

    // blocking
    #[error("point is not in the set")]
    PointNotInSet,
    #[error("set is not blocking")]
    NotBlocking,
    #[error("self-check failed: {0}")]
    SelfCheckFailed(String),

    // constructions
    #[error("field shape mismatch: {0}")]
    FieldShapeMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("tangent condition failed: base point {point:?} lies on {tangents} tangent line(s)")]
    TangentConditionFailed { point: Vec<u32>, tangents: usize },
    #[error("span condition failed: B(Pi) spans rank {got}, expected {expected}")]
    SpanConditionFailed { got: usize, expected: usize },
    #[error("extension degree t = {0} is too small (need t >= 4)")]
    TExponentTooSmall(usize),
    #[error("base meets nu")]
    BaseMeetsNu,
    #[error("base contains l minus T for a line l through T")]
    BaseLineConditionFailed,
    #[error("base meets Gamma in {0} points, expected exactly one")]
    BaseGammaMeetNotPoint(usize),
    #[error("input is not a minimal blocking set w.r.t. hyperplanes")]
    NotMinimalInput,
    #[error("frame search exhausted after {0} attempts")]
    SearchExhausted(u64),

    // files
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
