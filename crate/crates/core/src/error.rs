use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid {grid} has no constant {constant}")]
    UnsupportedConstant { grid: String, constant: String },
    #[error("digit {digit} at exponent {exponent} exceeds the input bound {bound}")]
    InputBoundExceeded {
        exponent: i64,
        digit: String,
        bound: i64,
    },
    #[error("automaton exceeded {cap} states")]
    StateExplosion { cap: usize },
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("denominator evaluates to zero")]
    ZeroDenominator,
    #[error("rotation by {angle} degrees needs {missing}")]
    UnsupportedRotation { angle: i64, missing: String },
    #[error("triangle is degenerate")]
    DegenerateTriangle,
    #[error("points coincide")]
    CoincidentPoints,
    #[error("polygon is not strictly convex")]
    NotConvex,
    #[error("{0} is not an element of the p-adic rationals")]
    NotDyadicRational(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("b = {0} must be a non-square integer >= 2")]
    NonSquareRequired(i64),
    #[error("stream digit {digit} at exponent {exponent} exceeds the operand bound {bound}")]
    OperandBoundExceeded {
        exponent: i64,
        digit: i64,
        bound: i64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
