//! Symbolic and numeric verification engine for the twisted kappa-AdS
//! quantum groups in 2+1 dimensions.

pub mod error;
pub mod report;
pub mod ring;
pub mod drinfeld;
pub mod expr;
pub mod geom;
pub mod hopf;
pub mod liealg;
pub mod pbw;
pub mod poisson;
pub mod qgroup;
pub mod suites;
pub mod scalars;

pub use error::{Error, Result};
pub use scalars::ExactScalar;

/// Series over the exact field Q(i, sqrt 2); the scalar of the symbolic layer.
pub type Series = scalars::Series<ExactScalar>;
