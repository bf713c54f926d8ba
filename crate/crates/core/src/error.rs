use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("normal form exceeds the term budget ({terms} > {budget})")]
    BudgetExceeded { terms: usize, budget: usize },

    #[error("p_n for |n| = {charge} (entry degree {degree}) exceeds the term budget ({terms} > {budget})")]
    InstantonBudget {
        charge: u32,
        degree: u32,
        terms: usize,
        budget: usize,
    },

    #[error("instanton construction for |n| = {degree} exceeds the configured limit {limit}")]
    DegreeExceeded { degree: u32, limit: u32 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("q = 0 is not allowed (coefficients are Laurent polynomials)")]
    ZeroQ,

    #[error("ring has no involution")]
    NoStar,

    #[error("parameter t = {0} lies outside [0, 1]")]
    OutOfRange(String),

    #[error("point is not on the unit 3-sphere (|alpha|^2 + |beta|^2 = {0})")]
    NotOnSphere(f64),

    #[error("input matrix is not unitary")]
    NotUnitary,

    #[error("n-window too small: need N >= {required}, got {given}")]
    WindowTooSmall { required: usize, given: usize },

    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    #[error("resolution {given} is below the minimum {minimum}")]
    ResolutionTooSmall { given: usize, minimum: usize },

    #[error("{0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
