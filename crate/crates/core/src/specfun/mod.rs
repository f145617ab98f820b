//! Special-function kernels: Γ, ψ, Bessel J of real order and the
//! generalized hypergeometric series, each with explicit error control.

mod bessel;
mod digamma;
mod gamma;
mod hypergeometric;
mod summation;

pub use bessel::bessel_j;
pub use digamma::{digamma, EULER_GAMMA};
pub use gamma::{cos_pi, gamma, ln_gamma, ln_gamma_abs, pochhammer, rgamma, sin_pi, GAMMA_MAX_ARG};
pub use hypergeometric::{hyp_pfq, EvalPolicy, SeriesValue};
pub use summation::{compensated_sum, CompensatedSum};
