use thiserror::Error;

#[derive(Debug, Error)]
pub enum LegwebError {
    #[error("index (m={m}, j={j}) out of range: need m >= 2 and 0 <= j <= 2m-2")]
    IndexOutOfRange { m: i64, j: i64 },

    #[error("d = {0} is out of range: need d >= 3")]
    BadWebSize(usize),

    #[error("web leaf values must be pairwise distinct")]
    DuplicateLeafValues,

    #[error("depth delta = {0} out of range: need delta >= 1")]
    BadDepth(i64),

    #[error("polynomial contains the variable q where a function of (x, y, p) is required")]
    UnexpectedQ,

    #[error("the zero polynomial has no weight or depth")]
    ZeroPolynomial,

    #[error("relation has {relation} components but web has {web} leaves")]
    WebMismatch { relation: usize, web: usize },

    #[error("cannot parse rational from {0:?}")]
    BadRational(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("point (x={x}, y={y}, p={p}) is outside the admissible domain")]
    DomainViolation { x: f64, y: f64, p: f64 },

    #[error("web members coincide at (x={x}, y={y}, p={p})")]
    CoincidentMembers { x: f64, y: f64, p: f64 },

    #[error("pointwise linear solve is singular at (x={x}, y={y}, p={p})")]
    SingularSolve { x: f64, y: f64, p: f64 },

    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

pub type Result<T> = std::result::Result<T, LegwebError>;
