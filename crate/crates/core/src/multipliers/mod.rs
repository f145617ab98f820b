//! Fourier multipliers m^{δ,β}(ν) of the nonlocal Laplacian: the ₂F₃ closed
//! form, a quadrature oracle, large- and small-‖ν‖ asymptotics and the
//! β = −∞ limit.

mod asymptotic;
mod limit;
mod multiplier;
mod oracle;
mod params;

pub use asymptotic::{asymptotic_large_nu, asymptotic_limit_large_nu, asymptotic_small_nu};
pub use limit::{multiplier_limit_beta_neg_inf, LIMIT_SERIES_SWITCH};
pub use multiplier::{multiplier, Method, MultiplierResult};
pub use oracle::{multiplier_quadrature_oracle, scaling_constant};
pub use params::{excluded_offset, Beta, KernelParams, EXCLUDED_BETA_TOL, LOCAL_BETA_TOL};
