use std::fmt;

use serde::Serialize;

use super::asymptotic::large_nu_expansion;
use super::limit::multiplier_limit_beta_neg_inf;
use super::oracle::multiplier_quadrature_oracle;
use super::params::{Beta, KernelParams};
use crate::error::{Error, Result};
use crate::specfun::{hyp_pfq, EvalPolicy, SeriesValue};

/// Series arguments above this value skip the quadrature fallback for an
/// unreliable series and go to the large-argument expansion.
const SERIES_FALLBACK_SPLIT: f64 = 10.0;

/// Evaluation path that produced a multiplier value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Series,
    ExactLocal,
    Asymptotic,
    Quadrature,
    LimitBessel,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Series => "SERIES",
            Method::ExactLocal => "EXACT_LOCAL",
            Method::Asymptotic => "ASYMPTOTIC",
            Method::Quadrature => "QUADRATURE",
            Method::LimitBessel => "LIMIT_BESSEL",
        })
    }
}

/// Multiplier value m^{δ,β}(ν) with the method used and an error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MultiplierResult {
    pub value: f64,
    pub method: Method,
    pub est_error: f64,
}

fn series(params: &KernelParams, nu_norm: f64, policy: &EvalPolicy) -> Result<(SeriesValue, MultiplierResult)> {
    let (a, b) = params.series_ab()?;
    let x = 0.5 * nu_norm * params.delta();
    let s = hyp_pfq(&[1.0, a], &[2.0, b, a + 1.0], -x * x, policy)?;
    let nu2 = nu_norm * nu_norm;
    let r = MultiplierResult { value: -nu2 * s.value, method: Method::Series, est_error: nu2 * s.est_error };
    Ok((s, r))
}

fn quadrature(params: &KernelParams, nu_norm: f64, policy: &EvalPolicy) -> Result<MultiplierResult> {
    let tol = policy.rel_tol.max(1e-12);
    let value = multiplier_quadrature_oracle(params, nu_norm, tol)?;
    Ok(MultiplierResult { value, method: Method::Quadrature, est_error: tol * value.abs().max(1.0) })
}

/// m^{δ,β}(ν) = −‖ν‖²·₂F₃(1, a; 2, b, a+1; −(‖ν‖δ/2)²) with a = (n+2−β)/2,
/// b = (n+2)/2, evaluated by the cheapest path that meets the policy.
///
/// Dispatch:
/// - β = n+2: exactly −‖ν‖².
/// - (‖ν‖δ/2)² ≤ large_arg_threshold: the series; if it is unreliable, the
///   large-argument expansion above an argument of 10 and quadrature below.
/// - otherwise the large-argument expansion (algebraic plus oscillating
///   parts). If its error estimate exceeds asymptotic_rel_tol·|m| a reliable
///   series is used instead, then quadrature when β < n+2.
///
/// β = −∞ is forwarded to [`multiplier_limit_beta_neg_inf`].
pub fn multiplier(params: &KernelParams, nu_norm: f64, policy: &EvalPolicy) -> Result<MultiplierResult> {
    policy.validate()?;
    if !(nu_norm >= 0.0 && nu_norm.is_finite()) {
        return Err(Error::Domain(format!("nu_norm must be finite and >= 0, got {nu_norm}")));
    }
    let beta = match params.beta() {
        Beta::NegInf => return multiplier_limit_beta_neg_inf(params.n(), params.delta(), nu_norm),
        Beta::Finite(b) => b,
    };
    if params.is_local() {
        return Ok(MultiplierResult { value: -nu_norm * nu_norm, method: Method::ExactLocal, est_error: 0.0 });
    }
    if nu_norm == 0.0 {
        return Ok(MultiplierResult { value: 0.0, method: Method::Series, est_error: 0.0 });
    }
    let integrable = beta < params.n() as f64 + 2.0;
    let x = 0.5 * nu_norm * params.delta();
    let w = x * x;

    let asymptotic_ok = |e: &MultiplierResult| e.est_error <= policy.asymptotic_rel_tol * e.value.abs();
    let expansion = || -> Result<MultiplierResult> {
        let e = large_nu_expansion(params, nu_norm)?;
        Ok(MultiplierResult { value: e.value, method: Method::Asymptotic, est_error: e.est_error })
    };
    let no_path = |detail: &str| {
        Error::Evaluation(format!(
            "n = {}, delta = {}, beta = {beta}, nu = {nu_norm}: {detail}",
            params.n(),
            params.delta()
        ))
    };

    if w <= policy.large_arg_threshold {
        let series_result = series(params, nu_norm, policy);
        if let Ok((s, r)) = &series_result {
            if s.reliable {
                return Ok(*r);
            }
        }
        if w > SERIES_FALLBACK_SPLIT {
            let e = expansion()?;
            if asymptotic_ok(&e) {
                return Ok(e);
            }
        }
        if integrable {
            return quadrature(params, nu_norm, policy);
        }
        return Err(no_path("series unreliable and beta >= n + 2 rules out quadrature"));
    }

    let e = expansion()?;
    if asymptotic_ok(&e) {
        return Ok(e);
    }
    if let Ok((s, r)) = series(params, nu_norm, policy) {
        if s.reliable {
            return Ok(r);
        }
    }
    if integrable {
        return quadrature(params, nu_norm, policy);
    }
    Err(no_path("large-argument expansion not accurate and series unreliable"))
}
