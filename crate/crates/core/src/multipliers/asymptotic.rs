use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::params::KernelParams;
use crate::error::{Error, Result};
use crate::specfun::{digamma, gamma, ln_gamma, ln_gamma_abs, EULER_GAMMA};

const EPS: f64 = f64::EPSILON;
const MAX_OSCILLATORY_TERMS: usize = 80;

/// Value and error estimate of an asymptotic evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Expansion {
    pub value: f64,
    pub est_error: f64,
}

fn check_nu(nu_norm: f64, strictly_positive: bool) -> Result<()> {
    let ok = nu_norm.is_finite() && if strictly_positive { nu_norm > 0.0 } else { nu_norm >= 0.0 };
    if !ok {
        return Err(Error::Domain(format!(
            "nu_norm must be finite and {}, got {nu_norm}",
            if strictly_positive { "> 0" } else { ">= 0" }
        )));
    }
    Ok(())
}

/// Algebraic (non-oscillating) part of the large-‖ν‖ behaviour: a constant
/// plus a power ‖ν‖^{β−n}, or a logarithm when β = n.
fn algebraic_part(params: &KernelParams, x: f64) -> Result<Expansion> {
    let (a, b) = params.series_ab()?;
    let n = params.n() as f64;
    let d2 = params.delta() * params.delta();
    let ln_x = x.ln();
    if a == 0.0 {
        // β = n+2: the expansion collapses to −‖ν‖²
        return Ok(Expansion { value: -4.0 * x * x / d2, est_error: 0.0 });
    }
    if a == 1.0 {
        let value = -(2.0 * n / d2) * (2.0 * ln_x + EULER_GAMMA - digamma(n / 2.0)?);
        let est_error = 8.0 * EPS * (2.0 * n / d2) * (2.0 * ln_x.abs() + 1.0 + digamma(n / 2.0)?.abs());
        return Ok(Expansion { value, est_error });
    }
    if (a - 1.0).abs() < 0.1 {
        // both terms blow up like 1/(a−1); combine them through expm1
        let eps = a - 1.0;
        // ln Γ(a) + ln Γ(b−1) − ln Γ(b−a) as integrals of ψ, avoiding cancelling log-gammas
        let (g1, e1) = ln_gamma_increment(1.0, eps)?;
        let (g2, e2) = ln_gamma_increment(b - 1.0, -eps)?;
        let l = g1 - g2 - 2.0 * eps * ln_x;
        let l_error = e1 + e2 + 4.0 * EPS * (g1.abs() + g2.abs() + (2.0 * eps * ln_x).abs());
        let factor = (2.0 * n / d2) * a / eps;
        let value = factor * l.exp_m1();
        let est_error = 8.0 * EPS * value.abs() + (factor * l.exp()).abs() * l_error;
        return Ok(Expansion { value, est_error });
    }
    let constant = -(2.0 * n / d2) * a / (a - 1.0);
    // power term: −(4/δ²)·a·Γ(b)Γ(a)/((1−a)Γ(b−a))·x^{2−2a}
    let power = match ln_gamma_abs(b - a) {
        Err(Error::Pole(_)) => 0.0,
        Err(e) => return Err(e),
        Ok((lg_ba, s_ba)) => {
            let (lg_a, s_a) = ln_gamma_abs(a)?;
            let sign = -s_a * s_ba * a.signum() * (1.0 - a).signum();
            let log_mag = (4.0 / d2).ln() + a.abs().ln() + ln_gamma(b)? + lg_a - lg_ba
                - (1.0 - a).abs().ln()
                + (2.0 - 2.0 * a) * ln_x;
            sign * log_mag.exp()
        }
    };
    let value = constant + power;
    let est_error = 8.0 * EPS * (constant.abs() + power.abs());
    Ok(Expansion { value, est_error })
}

/// ln Γ(c+h) − ln Γ(c) = ∫ψ over [c, c+h] with its error estimate, by
/// 5-point Gauss-Legendre on panels of width ≤ 0.01. The quadrature
/// remainder is below 1e-20 for |h| ≤ 0.1 and c + h ≥ 0.4.
fn ln_gamma_increment(c: f64, h: f64) -> Result<(f64, f64)> {
    const NODES: [f64; 3] = [0.0, 0.538_469_310_105_683_1, 0.906_179_845_938_664];
    const WEIGHTS: [f64; 3] = [0.568_888_888_888_888_9, 0.478_628_670_499_366_5, 0.236_926_885_056_189_1];
    let panels = (h.abs() / 0.01).ceil().max(1.0) as usize;
    let w = h / panels as f64;
    let (mut sum, mut mag) = (0.0, 0.0);
    for p in 0..panels {
        let mid = c + (p as f64 + 0.5) * w;
        for (i, (&t, &wt)) in NODES.iter().zip(&WEIGHTS).enumerate() {
            let mut f = digamma(mid + 0.5 * w * t)?;
            if i > 0 {
                f += digamma(mid - 0.5 * w * t)?;
            }
            sum += wt * f;
            mag += wt * f.abs();
        }
    }
    let scale = 0.5 * w;
    Ok((scale * sum, 16.0 * EPS * (scale * mag).abs()))
}

/// Oscillating part: −(4aΓ(b)/(δ²√π))·x^{1/2−b}·Σ_N h_N (2x)^{−N} cos(2x + φ + (N+1)π/2),
/// truncated before the smallest term.
fn oscillatory_part(params: &KernelParams, x: f64) -> Result<Expansion> {
    let (a, b) = params.series_ab()?;
    if a == 0.0 {
        return Ok(Expansion { value: 0.0, est_error: 0.0 });
    }
    let d2 = params.delta() * params.delta();
    let order = b - 2.0;
    let mu = 2.0 * a - 1.0 - b;
    let phase = 2.0 * x - order * FRAC_PI_2 - FRAC_PI_4;

    let mut hankel = Vec::with_capacity(MAX_OSCILLATORY_TERMS);
    let four_nu2 = 4.0 * order * order;
    let mut ak = 1.0;
    for k in 0..MAX_OSCILLATORY_TERMS {
        if k > 0 {
            let odd = 2.0 * k as f64 - 1.0;
            ak *= (four_nu2 - odd * odd) / (8.0 * k as f64);
        }
        hankel.push(ak);
    }
    let falling = |z: f64, m: usize| (0..m).fold(1.0, |acc, i| acc * (z - i as f64));

    let inv_2x = 0.5 / x;
    let mut power = 1.0;
    let mut sum = 0.0;
    let mut last_nonzero = f64::INFINITY;
    let mut omitted = 0.0;
    let mut truncated = false;
    let mut final_term = 0.0_f64;
    for big_n in 0..MAX_OSCILLATORY_TERMS {
        let h: f64 = (0..=big_n)
            .map(|k| hankel[k] * falling(mu - 0.5 - k as f64, big_n - k))
            .sum();
        let term = h * power;
        power *= inv_2x;
        final_term = term;
        if term == 0.0 {
            continue;
        }
        if big_n > 2 && term.abs() > last_nonzero {
            omitted = term.abs();
            truncated = true;
            break;
        }
        last_nonzero = term.abs();
        let angle = phase + (big_n as f64 + 1.0) * FRAC_PI_2;
        sum += term * angle.cos();
        if term.abs() <= 0.1 * EPS * sum.abs() {
            omitted = term.abs();
            truncated = true;
            break;
        }
    }
    if !truncated {
        // zero when the series terminated, otherwise a conservative bound
        omitted = final_term.abs();
    }
    let prefactor = -(4.0 * a * gamma(b)? / (d2 * PI.sqrt())) * x.powf(0.5 - b);
    let value = prefactor * sum;
    let est_error = prefactor.abs() * (omitted + 8.0 * EPS * sum.abs());
    Ok(Expansion { value, est_error })
}

/// Full large-‖ν‖ expansion (algebraic plus oscillating parts) with the
/// first omitted oscillating term as the error estimate.
pub(crate) fn large_nu_expansion(params: &KernelParams, nu_norm: f64) -> Result<Expansion> {
    check_nu(nu_norm, true)?;
    let x = 0.5 * nu_norm * params.delta();
    let h = algebraic_part(params, x)?;
    let e = oscillatory_part(params, x)?;
    Ok(Expansion { value: h.value + e.value, est_error: h.est_error + e.est_error })
}

/// Leading large-‖ν‖ asymptote of m^{δ,β}(ν).
///
/// β ≠ n: −2n(n+2−β)/(δ²(n−β)) + 2(2/δ)^{n+2−β}Γ((n+4−β)/2)Γ((n+2)/2)/((n−β)Γ(β/2))·‖ν‖^{β−n}.
/// β = n: −(2n/δ²)(2 log‖ν‖ + log(δ²/4) + γ − ψ(n/2)).
pub fn asymptotic_large_nu(params: &KernelParams, nu_norm: f64) -> Result<f64> {
    params.finite_beta()?;
    check_nu(nu_norm, true)?;
    Ok(algebraic_part(params, 0.5 * nu_norm * params.delta())?.value)
}

/// Two-term small-‖ν‖ expansion −‖ν‖²(1 − δ²(n+2−β)‖ν‖²/(4(n+2)(n+4−β))).
pub fn asymptotic_small_nu(params: &KernelParams, nu_norm: f64) -> Result<f64> {
    let beta = params.finite_beta()?;
    check_nu(nu_norm, false)?;
    let n = params.n() as f64;
    let d = params.delta();
    let nu2 = nu_norm * nu_norm;
    let coeff = d * d * (n + 2.0 - beta) / (4.0 * (n + 2.0) * (n + 4.0 - beta));
    Ok(-nu2 * (1.0 - coeff * nu2))
}

/// Large-‖ν‖ asymptote of the β = −∞ limit multiplier:
/// (2/δ)^{(n+3)/2}(Γ(n/2+1)/√π)cos(‖ν‖δ − (n−1)π/4)‖ν‖^{−(n−1)/2} − 2n/δ².
pub fn asymptotic_limit_large_nu(n: usize, delta: f64, nu_norm: f64) -> Result<f64> {
    KernelParams::neg_inf(n, delta)?;
    check_nu(nu_norm, true)?;
    let nf = n as f64;
    let amplitude = ((nf + 3.0) / 2.0 * (2.0 / delta).ln() + ln_gamma(nf / 2.0 + 1.0)?
        - 0.5 * PI.ln()
        - (nf - 1.0) / 2.0 * nu_norm.ln())
    .exp();
    Ok(amplitude * (nu_norm * delta - (nf - 1.0) * FRAC_PI_4).cos() - 2.0 * nf / (delta * delta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, d: f64, b: f64) -> KernelParams {
        KernelParams::finite(n, d, b).unwrap()
    }

    #[test]
    fn expansion_near_beta_equal_n_has_honest_error() {
        // 40-digit reference values of the full multiplier
        let cases = [
            (1, 0.4563154416154925, 0.9983515442168169, 56.026329145574344, -72.90785430900076128416),
            (2, 0.1, 2.01, 900.0, -3566.493323038853535167),
            (3, 0.05, 2.9999999, 3000.0, -22021.827711481204495),
        ];
        for (n, d, b, nu, reference) in cases {
            let e = large_nu_expansion(&p(n, d, b), nu).unwrap();
            let err = (e.value - reference).abs();
            assert!(err <= e.est_error && err <= 1e-12 * reference.abs(), "n={n}: {} vs {reference}, est {}", e.value, e.est_error);
        }
    }

    #[test]
    fn constant_term_for_beta_below_n() {
        // −2n(n+2−β)/(δ²(n−β)) = −6 for n=1, δ=1, β=0; the power term decays
        let v = asymptotic_large_nu(&p(1, 1.0, 0.0), 1e12).unwrap();
        assert!((v + 6.0).abs() < 1e-9);
    }

    #[test]
    fn logarithmic_case() {
        let v = asymptotic_large_nu(&p(2, 0.1, 2.0), 100.0).unwrap();
        let want = -(4.0 / 0.01) * (2.0 * 100.0_f64.ln() + 0.0025_f64.ln() + 2.0 * EULER_GAMMA);
        assert!((v - want).abs() < 1e-12 * want.abs());
        assert!(asymptotic_large_nu(&p(2, 0.1, 2.0), 0.0).is_err());
    }

    #[test]
    fn near_logarithmic_case_is_continuous() {
        let at = asymptotic_large_nu(&p(2, 0.1, 2.0), 300.0).unwrap();
        for eps in [1e-3, 1e-6, 1e-9] {
            let lo = asymptotic_large_nu(&p(2, 0.1, 2.0 - eps), 300.0).unwrap();
            let hi = asymptotic_large_nu(&p(2, 0.1, 2.0 + eps), 300.0).unwrap();
            assert!((lo - at).abs() < 20.0 * eps * at.abs(), "{lo} {at}");
            assert!((hi - at).abs() < 20.0 * eps * at.abs(), "{hi} {at}");
        }
    }

    #[test]
    fn growth_coefficient_for_beta_n_plus_one() {
        // n=1, δ=0.1, β=2: 2(2/δ)Γ(3/2)Γ(3/2)/((−1)Γ(1))·‖ν‖ = −(π/δ)‖ν‖, plus constant
        let params = p(1, 0.1, 2.0);
        let constant = -2.0 * 1.0 * 1.0 / -0.01;
        for nu in [200.0, 400.0, 800.0] {
            let v = asymptotic_large_nu(&params, nu).unwrap();
            let want = constant - PI / 0.1 * nu;
            assert!((v - want).abs() < 1e-12 * want.abs());
        }
    }

    #[test]
    fn exact_local_exponent_reduces_to_laplacian() {
        let v = asymptotic_large_nu(&p(2, 0.3, 4.0), 17.0).unwrap();
        assert!((v + 289.0).abs() < 1e-11);
        assert_eq!(asymptotic_small_nu(&p(2, 0.3, 4.0), 17.0).unwrap(), -289.0);
    }

    #[test]
    fn limit_asymptote_is_exact_in_one_dimension() {
        for nu in [1.0, 13.0, 999.0] {
            let v = asymptotic_limit_large_nu(1, 0.1, nu).unwrap();
            let want = 2.0 * ((0.1 * nu).cos() - 1.0) / 0.01;
            assert!((v - want).abs() < 1e-11 * want.abs().max(1.0));
        }
    }
}
