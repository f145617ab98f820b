use std::f64::consts::PI;

use super::params::KernelParams;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, DEFAULT_MAX_SUBDIVISIONS};
use crate::specfun::{bessel_j, gamma, rgamma};

/// c^{δ,β} = 2(n+2−β)Γ(n/2+1) / (π^{n/2} δ^{n+2−β}), the constant that makes
/// the operator reproduce Δ‖x‖² = 2n. Requires β < n+2.
pub fn scaling_constant(params: &KernelParams) -> Result<f64> {
    let beta = params.integrable_beta()?;
    let n = params.n() as f64;
    let s = n + 2.0 - beta;
    let log_c = (2.0 * s).ln() + crate::specfun::ln_gamma(n / 2.0 + 1.0)?
        - (n / 2.0) * PI.ln()
        - s * params.delta().ln();
    Ok(log_c.exp())
}

/// J_{b−2}(y)/(y/2)^{b−2} − 1/Γ(b−1) with b = (n+2)/2: the angular average of
/// cos(ν·z) − 1 over the unit sphere, up to the factor Γ(b−1).
pub(crate) fn radial_bracket(b: f64, y: f64) -> Result<f64> {
    if y <= 4.0 {
        return Ok(y * y * reduced_bracket(b, y)?);
    }
    if b == 1.5 {
        return Ok(((y).cos() - 1.0) / PI.sqrt());
    }
    let order = b - 2.0;
    Ok(bessel_j(order, y)? / (0.5 * y).powf(order) - rgamma(b - 1.0))
}

/// radial_bracket(b, y)/y², finite at y = 0 where it equals −1/(4Γ(b)).
pub(crate) fn reduced_bracket(b: f64, y: f64) -> Result<f64> {
    if y > 4.0 {
        return Ok(radial_bracket(b, y)? / (y * y));
    }
    // sin² and y² underflow together below the floor
    if b == 1.5 && y > 1e-8 {
        let s = (0.5 * y).sin();
        return Ok(-2.0 * s * s / (PI.sqrt() * y * y));
    }
    // −(1/4) Σ_{k≥1} (−y²/4)^{k−1} / (k! Γ(b−1+k))
    let q = -0.25 * y * y;
    let mut term = rgamma(b);
    let mut sum = term;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (b - 1.0 + kf));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    Ok(-0.25 * sum)
}

/// Multiplier from the radial integral representation, by adaptive
/// quadrature. Requires β < n+2.
///
/// The substitution r = δ·t^{2/(n+2−β)} turns the integral into
/// 8Γ(b)‖ν‖² ∫₀¹ t·q(‖ν‖δ t^κ) dt with a bounded integrand, where q is the
/// reduced bracket. The target is tol·max(1, |m|).
pub fn multiplier_quadrature_oracle(params: &KernelParams, nu_norm: f64, tol: f64) -> Result<f64> {
    let beta = params.integrable_beta()?;
    if !(nu_norm >= 0.0 && nu_norm.is_finite()) {
        return Err(Error::Domain(format!("nu_norm must be finite and >= 0, got {nu_norm}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tol must be > 0, got {tol}")));
    }
    if nu_norm == 0.0 {
        return Ok(0.0);
    }
    let n = params.n() as f64;
    let b = (n + 2.0) / 2.0;
    let kappa = 2.0 / (n + 2.0 - beta);
    let y = nu_norm * params.delta();
    let scale = 8.0 * gamma(b)? * nu_norm * nu_norm;
    // the integrand can only fail for invalid orders, which b excludes
    let f = |t: f64| t * reduced_bracket(b, y * t.powf(kappa)).unwrap_or(f64::NAN);
    let r = integrate(f, 0.0, 1.0, tol / scale, tol, DEFAULT_MAX_SUBDIVISIONS)?;
    Ok(scale * r.value)
}
