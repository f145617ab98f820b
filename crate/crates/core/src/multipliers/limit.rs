use super::multiplier::{Method, MultiplierResult};
use super::oracle::radial_bracket;
use super::params::KernelParams;
use crate::error::{Error, Result};
use crate::specfun::{gamma, hyp_pfq, rgamma, EvalPolicy};

/// Below this value of ‖ν‖δ the limit multiplier is summed from its ₁F₂
/// series instead of the Bessel form.
pub const LIMIT_SERIES_SWITCH: f64 = 1e-2;

/// Multiplier of the β = −∞ limit operator,
/// (4Γ(n/2+1)/δ²)·[J_{(n−2)/2}(‖ν‖δ)/(‖ν‖δ/2)^{(n−2)/2} − 1/Γ(n/2)].
pub fn multiplier_limit_beta_neg_inf(n: usize, delta: f64, nu_norm: f64) -> Result<MultiplierResult> {
    KernelParams::neg_inf(n, delta)?;
    if !(nu_norm >= 0.0 && nu_norm.is_finite()) {
        return Err(Error::Domain(format!("nu_norm must be finite and >= 0, got {nu_norm}")));
    }
    if nu_norm == 0.0 {
        return Ok(MultiplierResult { value: 0.0, method: Method::LimitBessel, est_error: 0.0 });
    }
    let b = (n as f64 + 2.0) / 2.0;
    let y = nu_norm * delta;
    if y <= LIMIT_SERIES_SWITCH {
        let policy = EvalPolicy { rel_tol: 1e-15, ..EvalPolicy::default() };
        let s = hyp_pfq(&[1.0], &[2.0, b], -0.25 * y * y, &policy)?;
        let nu2 = nu_norm * nu_norm;
        return Ok(MultiplierResult {
            value: -nu2 * s.value,
            method: Method::LimitBessel,
            est_error: nu2 * s.est_error,
        });
    }
    let scale = 4.0 * gamma(b)? / (delta * delta);
    let bracket = radial_bracket(b, y)?;
    let est_error = scale * 16.0 * f64::EPSILON * (bracket.abs() + rgamma(b - 1.0).abs());
    Ok(MultiplierResult { value: scale * bracket, method: Method::LimitBessel, est_error })
}
