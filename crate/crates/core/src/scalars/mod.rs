//! Exact coefficients and truncated series in the deformation parameters.

pub mod elementary;
pub mod exact;
pub mod series;

pub use elementary::Elementary;
pub use exact::{Coeff, ExactScalar};
pub use series::{series_arith, series_compose_elementary, ArithOp, Assignment, Exps, Series, Var};
