use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not unitary (defect {defect:e})")]
    NotUnitary { defect: f64 },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("eigenvalue {distance:e} away from -1; principal logarithm undefined")]
    BranchCut { distance: f64 },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("singular coefficient for kappa={kappa:?}, sigma={sigma:?}, c={c}")]
    SingularCoefficient {
        kappa: Vec<u32>,
        sigma: Vec<u32>,
        c: String,
    },

    #[error("no certified zero found: {0}")]
    NoZeroFound(String),

    #[error("endpoints do not bracket a sign change (f(L)={left}, f(R)={right})")]
    NoSignChange { left: f64, right: f64 },

    #[error("search stalled after {iterations} iterations (residual {residual:e})")]
    Stalled { iterations: usize, residual: f64 },

    #[error("multiset is not closed under products and inverses: {0}")]
    NotAGroup(String),

    #[error("closure exceeded {limit} elements")]
    Overflow { limit: usize },

    #[error("grouping plan does not cover spherical weight {0:?}")]
    CoverageGap(Vec<u32>),

    #[error("omega for {0:?} carries no valid zero certificate")]
    UncertifiedOmega(Vec<Vec<u32>>),

    #[error("{what} too large: {size} exceeds {limit}")]
    TooLarge {
        what: &'static str,
        size: String,
        limit: String,
    },

    #[error("recipe child too large for probe factorization: {0}")]
    ChildTooLarge(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
