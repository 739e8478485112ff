pub mod algebra;
pub mod cli;
pub mod codim;
pub mod error;
pub mod generic;
pub mod linalg;
pub mod mat;
pub mod report;
pub mod split;
pub mod strata;
pub mod tol;

pub use error::{Error, Result};
pub use tol::ToleranceConfig;
