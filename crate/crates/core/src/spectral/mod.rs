//! Periodic torus machinery: mode layout, FFT-based transforms, the
//! nonlocal operator as a Fourier multiplier, the Poisson solver and
//! Sobolev norms.

mod field;
mod operator;
mod torus;
mod transform;

pub use field::{GridField, SpectralField};
pub use operator::{
    apply_operator_spectral, eigenvalue_array, sobolev_norm, solve_poisson, MEAN_ZERO_TOL, SINGULAR_EIGENVALUE,
};
pub use torus::{frequencies, TorusSpec};
pub use transform::{forward_transform, inverse_transform};
