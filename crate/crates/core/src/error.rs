use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("gram matrix is not square")]
    NotSquare,

    #[error("form is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),

    #[error("form is degenerate")]
    Degenerate,

    #[error("class {0:?} is not characteristic")]
    NotCharacteristic(Vec<i64>),

    /// A named hypothesis of one of the formulas does not hold.
    #[error("{condition} violated: {detail}")]
    Violated {
        condition: &'static str,
        detail: String,
    },

    #[error("window underflow: point {point} outside [{lo}, {hi}]")]
    Window { point: i64, lo: i64, hi: i64 },

    #[error("kernel condition violated at x = {witness}: value {value}")]
    KernelViolated { witness: i64, value: String },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    pub(crate) fn violated(condition: &'static str, detail: impl Into<String>) -> Self {
        Error::Violated {
            condition,
            detail: detail.into(),
        }
    }

    /// Whether the error is a failed precondition of a well-formed request,
    /// as opposed to malformed data.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::Violated { .. }
                | Error::NotCharacteristic(_)
                | Error::Window { .. }
                | Error::KernelViolated { .. }
                | Error::NotHomogeneous
        )
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
