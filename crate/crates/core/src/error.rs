use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported field size {0}: need q = p^k with p <= 13 and q <= 81")]
    UnsupportedField(u32),
    #[error("invalid field modulus for q = {q}: {reason}")]
    BadModulus { q: u32, reason: String },
    #[error("field mismatch: F_{0} vs F_{1}")]
    FieldMismatch(u32, u32),
    #[error("element {value} out of range for F_{q}")]
    ElementRange { value: i64, q: u32 },
    #[error("variable mismatch: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("JSON error at line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("incompatible divisor marking on coordinate {0}")]
    IncompatibleMarking(usize),
    #[error("charts fail to glue on chart {chart}")]
    GluingFailure { chart: usize },
    #[error("wrong degree: expected {expected}, found {found}")]
    WrongDegree { expected: u32, found: u32 },
    #[error("the zero polynomial does not define a divisor")]
    ZeroDivisor,
    #[error("blow-up center is not a coordinate subspace: {0}")]
    NonCoordinateCenter(String),
    #[error("form is not closed")]
    NotClosed,
    #[error("polynomial is a unit at the point")]
    UnitAtPoint,
    #[error("rank {0} unsupported (max 3)")]
    RankBound(usize),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("cone {0} is not smooth")]
    NonSmoothCone(usize),
    #[error("fan is not complete")]
    NotComplete,
    #[error("fan is not a smooth complete surface fan")]
    NotSurface,
    #[error("character window too large ({0} points)")]
    WindowOverflow(u64),
    #[error("divisor is not ample")]
    NotAmple,
    #[error("empty window")]
    EmptyWindow,
    #[error("matrix is not invertible over the Laurent ring")]
    NotInvertible,
    #[error("curve lies inside the divisor")]
    CurveInDivisor,
    #[error("charts do not cover the curve")]
    ChartsDoNotCover,
    #[error("invalid Dynkin diagram: {0}")]
    Dynkin(String),
    #[error("line {line}: {msg}")]
    Table { line: usize, msg: String },
    #[error("center is not on the surface: {0}")]
    CenterOutside(String),
}
