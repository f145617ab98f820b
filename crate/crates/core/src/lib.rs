// `!(x > 0.0)` guards also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// frozen reference values keep all printed digits
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod error;
pub mod experiments;
pub mod multipliers;
pub mod quadrature;
pub mod realspace;
pub mod report;
pub mod spectral;
pub mod specfun;

pub use error::{Error, Result};
