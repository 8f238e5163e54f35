use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("mismatched variable counts: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("term does not divide the polynomial")]
    InexactDivision,

    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("polynomial is not reduced (has a repeated factor): {0}")]
    NotReduced(String),

    #[error("curve degree {0} is below the supported minimum of 3")]
    DegreeTooSmall(u32),

    #[error("curve degree {degree} exceeds the --max-degree guard {limit}")]
    DegreeTooLarge { degree: u32, limit: u32 },

    #[error("the curve is smooth, so the module of essential relations is zero")]
    EssentialRelationsZero,

    #[error("the curve is smooth; this invariant is only defined for singular curves")]
    SmoothCurve,

    #[error("local quotient is not finite-dimensional")]
    InfiniteColength,

    #[error("point {0} has no rational coordinates in this chart")]
    IrrationalPoint(String),

    #[error("point {0} does not lie on the curve")]
    PointNotOnCurve(String),

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("computation limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// False for failures of the computation itself, true for everything
    /// caused by the input.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Inconsistent(_) | Error::LimitExceeded(_))
    }
}
