use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::gamma::{gamma, ln_gamma};
use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;

/// Bessel function of the first kind J_ν(x) for real order ν ≥ -1/2 and
/// x ≥ 0.
///
/// Regimes: closed forms for ν = ±1/2, ascending series while the terms
/// decrease monotonically, Hankel's expansion for large x, Miller backward
/// recurrence in between.
pub fn bessel_j(order: f64, x: f64) -> Result<f64> {
    if order.is_nan() || x.is_nan() {
        return Err(Error::Domain("bessel_j of NaN".into()));
    }
    if x < 0.0 {
        return Err(Error::Domain(format!("bessel_j requires x >= 0, got {x}")));
    }
    if order < -0.5 {
        return Err(Error::Domain(format!(
            "bessel_j requires order >= -1/2, got {order}"
        )));
    }
    if !x.is_finite() {
        return Ok(0.0);
    }
    if order == -0.5 {
        if x == 0.0 {
            return Ok(f64::INFINITY);
        }
        return Ok((2.0 / (PI * x)).sqrt() * x.cos());
    }
    if order == 0.5 {
        if x == 0.0 {
            return Ok(0.0);
        }
        return Ok((2.0 / (PI * x)).sqrt() * x.sin());
    }
    if x == 0.0 {
        return Ok(if order == 0.0 {
            1.0
        } else if order > 0.0 {
            0.0
        } else {
            f64::INFINITY
        });
    }
    if x * x <= 16.0 || x * x <= 4.0 * (order + 1.0) {
        return Ok(ascending_series(order, x));
    }
    if let Some(v) = hankel(order, x) {
        return Ok(v);
    }
    miller(order, x)
}

fn ascending_series(order: f64, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * (order + kf));
        sum += term;
        if term.abs() <= 0.5 * EPS * sum.abs() {
            break;
        }
    }
    let log_prefactor = order * (0.5 * x).ln() - ln_gamma(order + 1.0).unwrap_or(f64::INFINITY);
    sum * log_prefactor.exp()
}

// Hankel's large-argument expansion. Returns None unless the smallest term
// drops below double-precision resolution.
fn hankel(order: f64, x: f64) -> Option<f64> {
    if x < 20.0 {
        return None;
    }
    let mu = 4.0 * order * order;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    let mut converged = false;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu - odd * odd) / (8.0 * kf * x);
        if term.abs() > prev {
            break;
        }
        prev = term.abs();
        // a_k/x^k enters P with sign (-1)^(k/2) at even k, Q with (-1)^((k-1)/2) at odd k
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if term == 0.0 || term.abs() < 0.5 * EPS * p.abs().max(q.abs()) {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    let omega = x - (order * FRAC_PI_2 + FRAC_PI_4);
    Some((2.0 / (PI * x)).sqrt() * (p * omega.cos() - q * omega.sin()))
}

// Backward recurrence on J_{ν+k}, normalized with the Neumann-type identity
// (x/2)^{ν0} = Σ_k (ν0+2k) Γ(ν0+k)/k! · J_{ν0+2k}(x), ν0 ∈ {ν, ν+1} chosen ≥ 0.
fn miller(order: f64, x: f64) -> Result<f64> {
    let nu0_shift: usize = if order >= 0.0 { 0 } else { 1 };
    let nu0 = order + nu0_shift as f64;
    let top = (1.2 * x).ceil() as usize + 60;
    let mut f_next = 0.0_f64; // f_{k+1}
    let mut f_cur = 1e-280_f64; // f_k
    let mut f_target = 0.0;
    let mut norm = 0.0;
    // Coefficient (ν0+2j)(ν0+1)_{j-1}/j! attached to f_{ν0+2j}, j ≥ 1.
    let coeff = |j: usize| -> f64 {
        let jf = j as f64;
        let mut c = nu0 + 2.0 * jf;
        for i in 1..=j {
            let i_f = i as f64;
            c *= if i < j { (nu0 + i_f) / i_f } else { 1.0 / i_f };
        }
        c
    };
    for k in (0..=top).rev() {
        // f_cur is J_{ν+k} up to a common scale
        if k == 0 {
            f_target = f_cur;
        }
        if k >= nu0_shift {
            let m = k - nu0_shift;
            if m == 0 {
                norm += f_cur;
            } else if m.is_multiple_of(2) {
                norm += coeff(m / 2) * f_cur;
            }
        }
        if k == 0 {
            break;
        }
        let mu = order + k as f64;
        let f_prev = 2.0 * mu / x * f_cur - f_next;
        f_next = f_cur;
        f_cur = f_prev;
        if f_cur.abs() > 1e250 {
            f_cur *= 1e-250;
            f_next *= 1e-250;
            norm *= 1e-250;
        }
    }
    // Γ(ν0+1)·norm = (x/2)^{ν0} / scale
    let scale_log = nu0 * (0.5 * x).ln() - gamma(nu0 + 1.0)?.ln();
    Ok(f_target / norm * scale_log.exp())
}
