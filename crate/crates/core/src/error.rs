use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field extension degree must be at least 1")]
    InvalidDegree,

    #[error("{what} needs {required} but the budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: String,
        budget: u64,
    },

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("coefficient {value} is not reduced modulo {p}")]
    NonCanonical { value: u32, p: u32 },

    #[error("n >= 2 required (got n = {0})")]
    DimensionTooSmall(usize),

    #[error("rank {r} out of range 1..={n}")]
    RankOutOfRange { r: usize, n: usize },

    #[error("element index {index} outside a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("matrix shape mismatch: expected {expected} entries, got {actual}")]
    ShapeMismatch { expected: usize, actual: usize },

    #[error("invalid cyclic factor order {0}; every factor must be at least 2")]
    InvalidFactor(u32),

    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, required: impl ToString, budget: u64) -> Self {
        Error::BudgetExceeded {
            what,
            required: required.to_string(),
            budget,
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
