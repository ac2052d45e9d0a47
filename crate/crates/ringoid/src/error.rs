//! Crate-wide error type.

use crate::check::ValidationReport;

/// Errors produced by constructors, searches and conversions.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input tables have the wrong shape (not square, out-of-range entries,
    /// mismatched lengths). Distinct from axiom violations.
    #[error("malformed {context}: {detail}")]
    Malformed { context: String, detail: String },

    /// A structure failed its axiom checks; the report carries one
    /// lexicographically least witness per violated law.
    #[error("invalid {context}: {report}")]
    Invalid {
        context: String,
        report: ValidationReport,
    },

    /// A search or construction exceeded the configured size budget.
    #[error("budget exceeded during {0}; raise the budget (RINGOID_BUDGET or --budget) to proceed")]
    BudgetExceeded(String),

    /// A simplicial ring is not good: the two degeneracy kernels fail to
    /// annihilate each other at the recorded witness pair.
    #[error("kernel product obstruction at morphism pair ({0}, {1})")]
    NotGood(usize, usize),

    /// An operation was invoked outside its declared precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn malformed(context: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Malformed {
            context: context.into(),
            detail: detail.into(),
        }
    }

    pub fn invalid(context: impl Into<String>, report: ValidationReport) -> Self {
        Error::Invalid {
            context: context.into(),
            report,
        }
    }
}
