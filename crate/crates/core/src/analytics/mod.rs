//! Closed-form growth of the Kleinberg ball and the long-range probability
//! bound.
//!
//! Everything here is generic over the scalar: recurrences over exact
//! integers or rationals, eigenvalues and bounds over any `Float`. The
//! crate root exports concrete aliases for the common choices.

mod bound;
mod eigen;
mod recurrence;

pub use bound::{verify_longrange_lower_bound, BoundCheck};
pub use eigen::{companion_matrix, dominant_eigenvalue, predict_ell, AlphaEstimate, CompanionMatrix};
pub use recurrence::{recurrence_c, recurrence_c_general, recurrence_values, RecurrenceSeries};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyticsError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("scalar type cannot represent 1/{0} exactly")]
    InexactScalar(u64),
    #[error("power iteration did not converge in {0} iterations")]
    NonConvergence(usize),
    #[error("power iteration ({power}) and bisection ({bisection}) disagree")]
    MethodsDisagree { power: f64, bisection: f64 },
}
