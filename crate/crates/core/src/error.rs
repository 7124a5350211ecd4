use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} indeterminates, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("unknown indeterminate `{0}`")]
    UnknownIndeterminate(String),

    #[error("duplicate indeterminate `{0}`")]
    DuplicateIndeterminate(String),

    #[error("invalid ring declaration: {0}")]
    InvalidRing(String),

    #[error("empty tuple of indeterminates")]
    EmptyIndeterminates,

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("weight matrix does not define a term ordering: {0}")]
    NotATermOrdering(String),

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial has a nonzero constant term; it does not lie in the maximal ideal")]
    NonzeroConstant,

    #[error("polynomial is not a linear form")]
    NotLinear,

    #[error("selected submatrix is singular")]
    SingularSubmatrix,

    #[error("rows of the coefficient matrix are linearly dependent")]
    RankDeficient,

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("tuple is not separating: {0}")]
    NotSeparating(String),

    #[error("substitution exceeded its expansion guard: {0}")]
    ExpansionGuard(String),

    #[error("excluded trivial case: {0}")]
    TrivialCase(String),

    #[error("instance exceeds supported size: {0}")]
    TooLarge(String),

    #[error("step budget exhausted")]
    BudgetExhausted,

    #[error("invalid order ideal: {0}")]
    InvalidOrderIdeal(String),

    #[error("invalid job: {0}")]
    InvalidJob(String),
}
