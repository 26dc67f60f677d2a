use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("division is not allowed in polynomial input (position {0})")]
    DivisionInInput(usize),

    #[error("not divisible: nonzero remainder")]
    NotDivisible,

    #[error("polynomials live in different rings")]
    RingMismatch,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("ideal is not zero-dimensional (projective dimension {0})")]
    NotZeroDimensional(i64),

    #[error("Hilbert function did not stabilize below degree {0}")]
    HilbertNotStabilized(u32),

    #[error("degree computations disagree: chart {chart}, hilbert {hilbert}")]
    DegreeModeMismatch { chart: u64, hilbert: u64 },

    #[error("presentation is not determinantal ({0} syzygy generators)")]
    NotDeterminantal(usize),

    #[error("polar map is undefined: all partial derivatives vanish")]
    UndefinedMap,

    #[error("polynomial degree must be at least 2")]
    DegreeTooSmall,

    #[error("inconclusive: generic trials disagree ({0})")]
    Inconclusive(String),

    #[error("arrangement is concurrent: the polar map is not dominant")]
    ConcurrentArrangement,

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("field too small: {0}")]
    FieldTooSmall(String),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("cross-check failed: {0}")]
    CrossCheckMismatch(String),

    #[error("enumeration budget exceeded: {count} subsets requested, limit {limit}")]
    BudgetExceeded { count: u128, limit: u128 },

    #[error("too many variables: {0} (at most {max})", max = crate::poly::MAX_VARS)]
    TooManyVariables(usize),
}

impl Error {
    /// True for failures that signal two independent methods disagreeing.
    pub fn is_inconsistency(&self) -> bool {
        matches!(
            self,
            Error::CrossCheckMismatch(_) | Error::DegreeModeMismatch { .. } | Error::Inconclusive(_)
        )
    }
}
