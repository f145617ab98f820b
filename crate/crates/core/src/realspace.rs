//! Direct real-space evaluation of L^{δ,β}u(x) and of the β = −∞ sphere
//! operator by radial adaptive quadrature times angular product rules.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::multipliers::KernelParams;
use crate::quadrature::{gauss_legendre, integrate, DEFAULT_MAX_SUBDIVISIONS};
use crate::specfun::ln_gamma;

/// Below r_min = RADIAL_CUTOFF·δ the symmetric difference is replaced by a
/// fitted even polynomial A r² + B r⁴ + C r⁶, since floating-point
/// cancellation dominates at small radii.
pub const RADIAL_CUTOFF: f64 = 1e-2;

/// Largest number of polar nodes tried by the adaptive sphere rule.
const MAX_POLAR_NODES: usize = 512;

/// Regularity the caller vouches for. C³ is required for β ≥ n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    C0,
    C3,
}

/// A real-valued function on ℝⁿ.
pub trait ScalarField: Sync {
    fn dim(&self) -> usize;
    fn eval(&self, x: &[f64]) -> f64;
    fn smoothness(&self) -> Smoothness;
}

/// A closure with a declared dimension and smoothness.
pub struct FnField<F> {
    dim: usize,
    smoothness: Smoothness,
    f: F,
}

impl<F: Fn(&[f64]) -> f64 + Sync> FnField<F> {
    pub fn new(dim: usize, smoothness: Smoothness, f: F) -> Self {
        Self { dim, smoothness, f }
    }
}

impl<F: Fn(&[f64]) -> f64 + Sync> ScalarField for FnField<F> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
    fn smoothness(&self) -> Smoothness {
        self.smoothness
    }
}

/// Fields with known derivatives, used by the convergence checks.
pub mod fields {
    use super::{FnField, ScalarField, Smoothness};

    /// Bound on the third-derivative modulus H_x of sin(x₁).
    pub const SIN_FIRST_COORD_H: f64 = 1.0 / 3.0;

    /// ‖x‖², for which L^{δ,β} gives exactly 2n.
    pub fn norm_squared(n: usize) -> impl ScalarField {
        FnField::new(n, Smoothness::C3, |x: &[f64]| x.iter().map(|v| v * v).sum())
    }

    /// cos(ν·x), an eigenfunction with eigenvalue m(‖ν‖).
    pub fn plane_wave(nu: Vec<f64>) -> impl ScalarField {
        FnField::new(nu.len(), Smoothness::C3, move |x: &[f64]| {
            nu.iter().zip(x).map(|(a, b)| a * b).sum::<f64>().cos()
        })
    }

    /// sin(x₁), with Δu = −sin(x₁).
    pub fn sin_first(n: usize) -> impl ScalarField {
        FnField::new(n, Smoothness::C3, |x: &[f64]| x[0].sin())
    }
}

/// Weighted nodes on the unit sphere S^{n−1}.
struct SphereRule {
    dim: usize,
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl SphereRule {
    /// Product rule: trapezoid in the azimuth and Gauss–Legendre with the
    /// sin^{k} Jacobian in each polar angle. `m` is the polar node count.
    fn new(dim: usize, m: usize) -> Self {
        match dim {
            1 => Self { dim, points: vec![1.0, -1.0], weights: vec![1.0, 1.0] },
            2 => {
                let count = 2 * m;
                let h = 2.0 * PI / count as f64;
                let mut points = Vec::with_capacity(2 * count);
                for j in 0..count {
                    let phi = h * j as f64;
                    points.push(phi.cos());
                    points.push(phi.sin());
                }
                Self { dim, points, weights: vec![h; count] }
            }
            _ => {
                let inner = SphereRule::new(dim - 1, m);
                let (xi, wi) = gauss_legendre(m);
                let mut points = Vec::with_capacity(dim * m * inner.weights.len());
                let mut weights = Vec::with_capacity(m * inner.weights.len());
                for (x, w) in xi.iter().zip(&wi) {
                    let theta = 0.5 * PI * (x + 1.0);
                    let (s, c) = theta.sin_cos();
                    let jac = 0.5 * PI * w * s.powi(dim as i32 - 2);
                    for (k, iw) in inner.weights.iter().enumerate() {
                        points.push(c);
                        points.extend(inner.points[k * (dim - 1)..(k + 1) * (dim - 1)].iter().map(|p| s * p));
                        weights.push(jac * iw);
                    }
                }
                Self { dim, points, weights }
            }
        }
    }

    fn len(&self) -> usize {
        self.weights.len()
    }

    fn point(&self, k: usize) -> &[f64] {
        &self.points[k * self.dim..(k + 1) * self.dim]
    }
}

fn check_point<U: ScalarField + ?Sized>(u: &U, x: &[f64], n: usize) -> Result<()> {
    if u.dim() != n || x.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "field dimension {}, point dimension {}, operator dimension {n}",
            u.dim(),
            x.len()
        )));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("evaluation point must be finite".into()));
    }
    Ok(())
}

/// ∫_{S^{n−1}} g(w) dS with the given rule; also returns Σ|w·g| as a scale.
fn sphere_sum(rule: &SphereRule, g: &mut impl FnMut(&[f64]) -> f64) -> (f64, f64) {
    let mut total = 0.0;
    let mut scale = 0.0;
    for k in 0..rule.len() {
        let v = rule.weights[k] * g(rule.point(k));
        total += v;
        scale += v.abs();
    }
    (total, scale)
}

/// Doubles the polar node count until the sphere integral at the outermost
/// radius is stable to `tol`, or to round-off in the field values when
/// `u_scale` bounds |u| on the sphere.
fn adaptive_sphere_rule(
    n: usize,
    tol: f64,
    u_scale: f64,
    g: &mut impl FnMut(&[f64]) -> f64,
) -> Result<SphereRule> {
    if n == 1 {
        return Ok(SphereRule::new(1, 1));
    }
    let mut m = 8;
    let (mut prev, _) = sphere_sum(&SphereRule::new(n, m), g);
    loop {
        let next_rule = SphereRule::new(n, 2 * m);
        let (next, scale) = sphere_sum(&next_rule, g);
        let err = (next - prev).abs();
        let area: f64 = next_rule.weights.iter().sum();
        if err <= 0.1 * tol * next.abs().max(1e-12 * scale) || err <= 1e-15 * scale || err <= 1e-13 * area * u_scale
        {
            return Ok(next_rule);
        }
        m *= 2;
        if m > MAX_POLAR_NODES {
            return Err(Error::QuadratureBudget { subdivisions: m, error: err });
        }
        prev = next;
    }
}

/// max |u| over x and x ± δe_i.
fn field_scale<U: ScalarField + ?Sized>(u: &U, x: &[f64], delta: f64) -> f64 {
    let mut buf = x.to_vec();
    let mut m = u.eval(x).abs();
    for i in 0..x.len() {
        for sign in [1.0, -1.0] {
            buf[i] = x[i] + sign * delta;
            m = m.max(u.eval(&buf).abs());
        }
        buf[i] = x[i];
    }
    m
}

fn shifted(x: &[f64], w: &[f64], r: f64, out: &mut [f64]) {
    for ((o, xi), wi) in out.iter_mut().zip(x).zip(w) {
        *o = xi + r * wi;
    }
}

/// L^{δ,β}u(x) = (c^{δ,β}/2)∫_{B_δ(0)} (u(x+z)+u(x−z)−2u(x))/‖z‖^β dz.
///
/// Requires β < n+2, and a C³ field when β ≥ n. The result is accurate to
/// about tol·max(1, |L u(x)|); for C0 fields whose kinks cross the ball in
/// n ≥ 2 the angular rule converges algebraically and tol below ~1e−5 may
/// exhaust the node budget.
pub fn apply_nonlocal_laplacian<U: ScalarField + ?Sized>(
    u: &U,
    x: &[f64],
    params: &KernelParams,
    tol: f64,
) -> Result<f64> {
    let beta = params.integrable_beta()?;
    let n = params.n();
    check_point(u, x, n)?;
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tol must be > 0, got {tol}")));
    }
    let nf = n as f64;
    let delta = params.delta();
    let smooth = u.smoothness() == Smoothness::C3;
    if !smooth && beta >= nf {
        return Err(Error::Domain(format!(
            "beta = {beta} >= n requires a field declared C3"
        )));
    }
    let ux = u.eval(x);
    let mut buf_p = vec![0.0; n];
    let mut buf_m = vec![0.0; n];
    let mut sym_diff = |r: f64, w: &[f64]| {
        shifted(x, w, r, &mut buf_p);
        shifted(x, w, -r, &mut buf_m);
        u.eval(&buf_p) + u.eval(&buf_m) - 2.0 * ux
    };
    let u_scale = field_scale(u, x, delta);
    let rule = adaptive_sphere_rule(n, tol, u_scale, &mut |w| sym_diff(delta, w))?;
    let s_of_r = |r: f64| -> f64 {
        let mut bp = vec![0.0; n];
        let mut bm = vec![0.0; n];
        let mut total = 0.0;
        for k in 0..rule.len() {
            let w = rule.point(k);
            shifted(x, w, r, &mut bp);
            shifted(x, w, -r, &mut bm);
            total += rule.weights[k] * (u.eval(&bp) + u.eval(&bm) - 2.0 * ux);
        }
        total
    };

    let ln_coef_base = ln_gamma(nf / 2.0 + 1.0)? - (nf / 2.0) * PI.ln() - 2.0 * delta.ln();
    if smooth {
        // r = δ t^κ with κ = 2/(n+2−β): integrand t^{p−1} S(δt^κ), p = κ(n−β)
        let kappa = 2.0 / (nf + 2.0 - beta);
        let p = kappa * (nf - beta);
        let coef = 2.0 * ln_coef_base.exp();
        let r_min = delta * RADIAL_CUTOFF;
        let t_min = RADIAL_CUTOFF.powf(1.0 / kappa);
        let (head, t_lo) = if t_min > 0.0 {
            // S(r)/r² as a quadratic in s = (r/r_min)² through r_min, 2r_min, 3r_min,
            // then r^{n+1−β}·S(r)/r² integrated over [0, r_min] in closed form
            let g: Vec<f64> = (1..=3)
                .map(|k| {
                    let r = k as f64 * r_min;
                    s_of_r(r) / (r * r)
                })
                .collect();
            let [a0, a1, a2] = quadratic_through(&[1.0, 4.0, 9.0], &g);
            let e = nf + 2.0 - beta;
            let poly = a0 / e + a1 / (e + 2.0) + a2 / (e + 4.0);
            // (c/2)∫ r^{n−1−β}S dr equals coef·∫ t^{p−1}S dt up to δ^{n−β}κ
            let r_integral = r_min.powf(e) * poly;
            (r_integral / (delta.powf(nf - beta) * kappa), t_min)
        } else {
            (0.0, 0.0)
        };
        let f = |t: f64| if t == 0.0 { 0.0 } else { t.powf(p - 1.0) * s_of_r(delta * t.powf(kappa)) };
        let r = integrate(f, t_lo, 1.0, 0.5 * tol / coef, 0.5 * tol, DEFAULT_MAX_SUBDIVISIONS)?;
        Ok(coef * (head + r.value))
    } else {
        // r = δ t^κ with κ = 1/(n−β): integrand S(δt^κ)
        let kappa = 1.0 / (nf - beta);
        let coef = (nf + 2.0 - beta) / (nf - beta) * ln_coef_base.exp();
        let f = |t: f64| s_of_r(delta * t.powf(kappa));
        let r = integrate(f, 0.0, 1.0, 0.5 * tol / coef, 0.5 * tol, DEFAULT_MAX_SUBDIVISIONS)?;
        Ok(coef * r.value)
    }
}

/// Coefficients [a, b, c] of the quadratic a + b·s + c·s² through (s_k, g_k).
fn quadratic_through(s: &[f64; 3], g: &[f64]) -> [f64; 3] {
    let d01 = (g[1] - g[0]) / (s[1] - s[0]);
    let d12 = (g[2] - g[1]) / (s[2] - s[1]);
    let c = (d12 - d01) / (s[2] - s[0]);
    let b = d01 - c * (s[0] + s[1]);
    let a = g[0] - b * s[0] - c * s[0] * s[0];
    [a, b, c]
}

/// L^{δ,−∞}u(x) = (2Γ(n/2+1)/(π^{n/2}δ²))∫_{S^{n−1}} (u(x+δw) − u(x)) dS(w).
pub fn apply_limit_operator_sphere<U: ScalarField + ?Sized>(
    u: &U,
    x: &[f64],
    n: usize,
    delta: f64,
    tol: f64,
) -> Result<f64> {
    KernelParams::neg_inf(n, delta)?;
    check_point(u, x, n)?;
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tol must be > 0, got {tol}")));
    }
    let nf = n as f64;
    let ux = u.eval(x);
    let mut buf = vec![0.0; n];
    let mut diff = |w: &[f64]| {
        shifted(x, w, delta, &mut buf);
        u.eval(&buf) - ux
    };
    let u_scale = field_scale(u, x, delta);
    let rule = adaptive_sphere_rule(n, tol, u_scale, &mut diff)?;
    let (total, _) = sphere_sum(&rule, &mut diff);
    let coef = 2.0 * (ln_gamma(nf / 2.0 + 1.0)? - (nf / 2.0) * PI.ln()).exp() / (delta * delta);
    Ok(coef * total)
}

/// Taylor-remainder bound H_x·2n(2+n−β)/(3+n−β)·δ on |L^{δ,β}u(x) − Δu(x)|,
/// with H_x a bound on the third derivatives of u near x.
pub fn taylor_error_bound(params: &KernelParams, h_x: f64) -> Result<f64> {
    let beta = params.integrable_beta()?;
    if !(h_x >= 0.0 && h_x.is_finite()) {
        return Err(Error::Domain(format!("H_x must be finite and >= 0, got {h_x}")));
    }
    let n = params.n() as f64;
    Ok(h_x * 2.0 * n * (2.0 + n - beta) / (3.0 + n - beta) * params.delta())
}
