//! Scripted multiplier sweeps and convergence studies emitting [`StudyReport`]s.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multipliers::{
    asymptotic_large_nu, asymptotic_limit_large_nu, asymptotic_small_nu, multiplier,
    multiplier_limit_beta_neg_inf, multiplier_quadrature_oracle, Beta, KernelParams,
};
use crate::report::{Cell, StudyReport};
use crate::specfun::{gamma, EvalPolicy};
use crate::spectral::{
    eigenvalue_array, forward_transform, inverse_transform, solve_poisson, sobolev_norm, GridField,
    SpectralField, TorusSpec,
};

/// Sobolev index of the data in every study.
pub const STUDY_SOBOLEV_INDEX: f64 = 0.0;
/// Accepted interval for consecutive δ-ladder slopes.
pub const DELTA_RATE_RANGE: (f64, f64) = (1.8, 2.2);
/// Study errors at or below this (relative to the local solution) count as zero.
pub const ZERO_ERROR_TOL: f64 = 1e-12;

/// Grid resolution per axis used by studies.
pub fn default_grid_size(n: usize) -> usize {
    if n >= 3 {
        32
    } else {
        64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

/// Sampled ‖ν‖ values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NuGrid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl NuGrid {
    /// 1000 equispaced points on [1, 318π].
    pub fn figure_default() -> Self {
        Self { min: 1.0, max: 318.0 * PI, count: 1000, spacing: Spacing::Linear }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::Invalid(format!("nu grid needs count >= 2, got {}", self.count)));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.min >= 0.0 && self.min < self.max) {
            return Err(Error::Invalid(format!(
                "nu grid needs 0 <= min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            return Err(Error::Invalid("log spacing needs min > 0".into()));
        }
        Ok(())
    }

    /// Grid points; the endpoints are hit exactly.
    pub fn points(&self) -> Vec<f64> {
        let last = self.count - 1;
        (0..self.count)
            .map(|i| {
                if i == last {
                    return self.max;
                }
                let t = i as f64 / last as f64;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * t,
                    Spacing::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * t).exp(),
                }
            })
            .collect()
    }
}

/// Comparison curves a sweep can emit next to m(ν).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepOutput {
    Multiplier,
    AsymptoteLarge,
    AsymptoteSmall,
    LimitNegInf,
    Oracle,
}

impl SweepOutput {
    pub fn column(self) -> &'static str {
        match self {
            SweepOutput::Multiplier => "multiplier",
            SweepOutput::AsymptoteLarge => "asymptote_large",
            SweepOutput::AsymptoteSmall => "asymptote_small",
            SweepOutput::LimitNegInf => "limit_neg_inf",
            SweepOutput::Oracle => "oracle",
        }
    }
}

/// A multiplier sweep: every params entry over one ν grid.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub params: Vec<KernelParams>,
    pub grid: NuGrid,
    pub outputs: Vec<SweepOutput>,
    pub policy: EvalPolicy,
    pub oracle_tol: f64,
}

impl SweepSpec {
    pub fn new(params: Vec<KernelParams>, grid: NuGrid, outputs: Vec<SweepOutput>) -> Self {
        Self { params, grid, outputs, policy: EvalPolicy::default(), oracle_tol: 1e-10 }
    }

    /// δ = 0.1 with one β below, at, one above and three above n, for n = 1, 2, 3.
    pub fn figure_one() -> Result<Self> {
        let mut params = Vec::new();
        for n in 1..=3usize {
            let nf = n as f64;
            let mut betas = vec![nf - 1.0, nf, nf + 1.0];
            if n < 3 {
                betas.push(nf + 3.0);
            }
            for b in betas {
                params.push(KernelParams::finite(n, 0.1, b)?);
            }
        }
        Ok(Self::new(params, NuGrid::figure_default(), vec![SweepOutput::AsymptoteLarge]))
    }

    /// δ = 0.1, β ∈ {−100, −500, −∞} for n = 1, 2, 3.
    pub fn figure_two() -> Result<Self> {
        let mut params = Vec::new();
        for n in 1..=3usize {
            params.push(KernelParams::finite(n, 0.1, -100.0)?);
            params.push(KernelParams::finite(n, 0.1, -500.0)?);
            params.push(KernelParams::neg_inf(n, 0.1)?);
        }
        Ok(Self::new(params, NuGrid::figure_default(), vec![SweepOutput::AsymptoteLarge, SweepOutput::LimitNegInf]))
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        self.policy.validate()?;
        if self.params.is_empty() {
            return Err(Error::Invalid("sweep needs at least one params entry".into()));
        }
        if !(self.oracle_tol > 0.0 && self.oracle_tol < 1.0) {
            return Err(Error::Invalid(format!("oracle tolerance must lie in (0, 1), got {}", self.oracle_tol)));
        }
        // the large-ν asymptote carries ‖ν‖^{β−n} or log‖ν‖
        if self.outputs.contains(&SweepOutput::AsymptoteLarge) && self.grid.min <= 0.0 {
            return Err(Error::Invalid("asymptote_large needs a grid with min > 0".into()));
        }
        if self.outputs.contains(&SweepOutput::Oracle) {
            for p in &self.params {
                p.integrable_beta()
                    .map_err(|_| Error::Invalid(format!("oracle needs a finite beta < n + 2, got {}", p.beta())))?;
            }
        }
        Ok(())
    }
}

fn beta_cell(beta: Beta) -> Cell {
    match beta {
        Beta::Finite(b) => Cell::Num(b),
        Beta::NegInf => Cell::Text("-inf".into()),
    }
}

fn sweep_row(spec: &SweepSpec, p: &KernelParams, nu: f64) -> Result<Vec<Cell>> {
    let m = multiplier(p, nu, &spec.policy)?;
    let mut row = vec![
        Cell::Int(p.n() as i64),
        Cell::Num(p.delta()),
        beta_cell(p.beta()),
        Cell::Num(nu),
        Cell::Num(m.value),
        Cell::Text(m.method.to_string()),
        Cell::Num(m.est_error),
    ];
    for out in spec.outputs.iter().filter(|o| **o != SweepOutput::Multiplier) {
        let v = match (out, p.beta()) {
            (SweepOutput::AsymptoteLarge, Beta::NegInf) => asymptotic_limit_large_nu(p.n(), p.delta(), nu)?,
            (SweepOutput::AsymptoteLarge, Beta::Finite(_)) => asymptotic_large_nu(p, nu)?,
            (SweepOutput::AsymptoteSmall, Beta::NegInf) => {
                let d2 = p.delta() * p.delta();
                -nu * nu * (1.0 - d2 * nu * nu / (4.0 * (p.n() as f64 + 2.0)))
            }
            (SweepOutput::AsymptoteSmall, Beta::Finite(_)) => asymptotic_small_nu(p, nu)?,
            (SweepOutput::LimitNegInf, _) => multiplier_limit_beta_neg_inf(p.n(), p.delta(), nu)?.value,
            (SweepOutput::Oracle, _) => multiplier_quadrature_oracle(p, nu, spec.oracle_tol)?,
            (SweepOutput::Multiplier, _) => unreachable!(),
        };
        row.push(Cell::Num(v));
    }
    Ok(row)
}

/// m(ν) and the requested comparison curves for every params entry and grid
/// point, ordered by params entry then ν.
pub fn figure_multiplier_sweep(spec: &SweepSpec) -> Result<StudyReport> {
    spec.validate()?;
    let mut columns = vec!["n", "delta", "beta", "nu", "multiplier", "method", "est_error"];
    let mut outputs: Vec<SweepOutput> = Vec::new();
    for o in &spec.outputs {
        if *o != SweepOutput::Multiplier && !outputs.contains(o) {
            outputs.push(*o);
            columns.push(o.column());
        }
    }
    let spec = SweepSpec { outputs, ..spec.clone() };
    let nus = spec.grid.points();
    let jobs: Vec<(usize, f64)> = (0..spec.params.len()).flat_map(|i| nus.iter().map(move |&nu| (i, nu))).collect();
    let rows = jobs
        .par_iter()
        .map(|&(i, nu)| sweep_row(&spec, &spec.params[i], nu))
        .collect::<Result<Vec<_>>>()?;

    let mut report = StudyReport::new("multiplier sweep", &columns);
    let params: Vec<String> = spec.params.iter().map(|p| format!("({};{};{})", p.n(), p.delta(), p.beta())).collect();
    report.meta("params", params.join(";"));
    report.meta("nu_min", spec.grid.min);
    report.meta("nu_max", spec.grid.max);
    report.meta("count", spec.grid.count);
    report.meta("spacing", format!("{:?}", spec.grid.spacing).to_lowercase());
    add_policy_meta(&mut report, &spec.policy);
    if spec.outputs.contains(&SweepOutput::Oracle) {
        report.meta("oracle_tol", spec.oracle_tol);
    }
    for row in rows {
        report.push_row(row)?;
    }
    Ok(report)
}

fn add_policy_meta(report: &mut StudyReport, policy: &EvalPolicy) {
    report.meta("rel_tol", policy.rel_tol);
    report.meta("abs_tol", policy.abs_tol);
    report.meta("max_terms", policy.max_terms);
    report.meta("cancellation_guard", policy.cancellation_guard);
    report.meta("large_arg_threshold", policy.large_arg_threshold);
    report.meta("asymptotic_rel_tol", policy.asymptotic_rel_tol);
}

/// Least-squares line through (x, y): (slope, intercept, rms residual).
pub fn least_squares_line(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let k = x.len() as f64;
    let mx = x.iter().sum::<f64>() / k;
    let my = y.iter().sum::<f64>() / k;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    (slope, intercept, (ss / k).sqrt())
}

fn local_solution(f_hat: &SpectralField, policy: &EvalPolicy) -> Result<SpectralField> {
    let n = f_hat.torus().n();
    // any horizon works: β = n+2 is the classical Laplacian
    let local = KernelParams::finite(n, 1.0, n as f64 + 2.0)?;
    solve_poisson(f_hat, &local, policy)
}

fn study_error(
    f_hat: &SpectralField,
    u0: &SpectralField,
    params: &KernelParams,
    s: f64,
    policy: &EvalPolicy,
) -> Result<f64> {
    let u = solve_poisson(f_hat, params, policy)?;
    Ok(sobolev_norm(&u.sub(u0)?, s))
}

fn check_ladder(ladder: &[f64], what: &str) -> Result<()> {
    if ladder.is_empty() {
        return Err(Error::Invalid(format!("{what} ladder is empty")));
    }
    if let Some(v) = ladder.iter().find(|v| !v.is_finite()) {
        return Err(Error::Invalid(format!("{what} ladder contains {v}")));
    }
    Ok(())
}

/// e(δ) = ‖u^{δ,β} − u‖_{H^{s′}} against the local solution u, with
/// s′ = max(0, β−n), over a ladder sorted by decreasing δ.
///
/// Checks: every error vanishes, or every consecutive log-log slope lies in
/// [`DELTA_RATE_RANGE`].
pub fn convergence_study_delta(
    f: &GridField,
    beta: f64,
    delta_ladder: &[f64],
    policy: &EvalPolicy,
) -> Result<StudyReport> {
    check_ladder(delta_ladder, "delta")?;
    let torus = f.torus();
    let n = torus.n();
    let nf = n as f64;
    if !(beta <= nf + 2.0) {
        return Err(Error::Domain(format!("delta study needs beta <= n + 2 = {}, got {beta}", nf + 2.0)));
    }
    let mut ladder = delta_ladder.to_vec();
    ladder.sort_by(|a, b| b.total_cmp(a));
    ladder.dedup();
    let params = ladder.iter().map(|&d| KernelParams::finite(n, d, beta)).collect::<Result<Vec<_>>>()?;

    let s = STUDY_SOBOLEV_INDEX + (beta - nf).max(0.0);
    let f_hat = forward_transform(f);
    let u0 = local_solution(&f_hat, policy)?;
    let errors =
        params.par_iter().map(|p| study_error(&f_hat, &u0, p, s, policy)).collect::<Result<Vec<_>>>()?;

    let mut report = StudyReport::new("poisson convergence in delta", &["delta", "error", "slope"]);
    report.meta("n", n);
    report.meta("beta", beta);
    report.meta("sobolev_index", s);
    add_torus_meta(&mut report, torus);
    add_policy_meta(&mut report, policy);

    let mut slopes = Vec::new();
    for (i, (&d, &e)) in ladder.iter().zip(&errors).enumerate() {
        let slope = if i > 0 && e > 0.0 && errors[i - 1] > 0.0 {
            let v = (e / errors[i - 1]).ln() / (d / ladder[i - 1]).ln();
            slopes.push(v);
            Cell::Num(v)
        } else {
            Cell::Text(String::new())
        };
        report.push_row(vec![Cell::Num(d), Cell::Num(e), slope])?;
    }

    let scale = sobolev_norm(&u0, s).max(1.0);
    let e_max = errors.iter().fold(0.0_f64, |a, &b| a.max(b));
    if e_max <= ZERO_ERROR_TOL * scale {
        report.check("errors vanish", true, format!("max error {e_max:.3e}"));
    } else {
        let positive: Vec<(f64, f64)> =
            ladder.iter().zip(&errors).filter(|(_, e)| **e > 0.0).map(|(d, e)| (d.ln(), e.ln())).collect();
        if positive.len() >= 2 {
            let (x, y): (Vec<f64>, Vec<f64>) = positive.into_iter().unzip();
            let (slope, _, resid) = least_squares_line(&x, &y);
            report.meta("fit_slope", slope);
            report.meta("fit_rms_residual", resid);
        }
        let (lo, hi) = DELTA_RATE_RANGE;
        let ok = !slopes.is_empty() && slopes.iter().all(|v| (lo..=hi).contains(v));
        let listed: Vec<String> = slopes.iter().map(|v| format!("{v:.4}")).collect();
        report.check("rate", ok, format!("slopes [{}] against [{lo}, {hi}]", listed.join(", ")));
    }
    Ok(report)
}

fn add_torus_meta(report: &mut StudyReport, torus: &TorusSpec) {
    let ls: Vec<String> = torus.lengths().iter().map(|v| v.to_string()).collect();
    let ns: Vec<String> = torus.grid_sizes().iter().map(|v| v.to_string()).collect();
    report.meta("lengths", ls.join(";"));
    report.meta("grid_sizes", ns.join(";"));
}

/// e(β) = ‖u^{δ,β} − u‖_{H^{2−ε}} against the local solution over a ladder
/// sorted by increasing β, with n < β ≤ n+2.
///
/// Checks: e strictly decreasing, and m^{δ,β}(ν_k) strictly decreasing in β
/// at every stored mode k ≠ 0.
pub fn convergence_study_beta(
    f: &GridField,
    delta: f64,
    beta_ladder: &[f64],
    epsilon: f64,
    policy: &EvalPolicy,
) -> Result<StudyReport> {
    check_ladder(beta_ladder, "beta")?;
    let torus = f.torus();
    let n = torus.n();
    let nf = n as f64;
    if !(epsilon > 0.0 && epsilon < 2.0) {
        return Err(Error::Invalid(format!("epsilon must lie in (0, 2), got {epsilon}")));
    }
    if let Some(b) = beta_ladder.iter().find(|&&b| !(b > nf && b <= nf + 2.0)) {
        return Err(Error::Domain(format!("beta study needs n < beta <= n + 2, got {b} for n = {n}")));
    }
    let mut ladder = beta_ladder.to_vec();
    ladder.sort_by(f64::total_cmp);
    ladder.dedup();
    let params = ladder.iter().map(|&b| KernelParams::finite(n, delta, b)).collect::<Result<Vec<_>>>()?;

    let s = STUDY_SOBOLEV_INDEX + 2.0 - epsilon;
    let f_hat = forward_transform(f);
    let u0 = local_solution(&f_hat, policy)?;
    let results = params
        .par_iter()
        .map(|p| Ok((study_error(&f_hat, &u0, p, s, policy)?, eigenvalue_array(torus, p, policy)?)))
        .collect::<Result<Vec<_>>>()?;

    let mut report = StudyReport::new("poisson convergence in beta", &["beta", "error", "ratio_to_first"]);
    report.meta("n", n);
    report.meta("delta", delta);
    report.meta("epsilon", epsilon);
    report.meta("sobolev_index", s);
    add_torus_meta(&mut report, torus);
    add_policy_meta(&mut report, policy);

    let errors: Vec<f64> = results.iter().map(|r| r.0).collect();
    for (&b, &e) in ladder.iter().zip(&errors) {
        let ratio = if errors[0] > 0.0 { e / errors[0] } else { 0.0 };
        report.push_row(vec![Cell::Num(b), Cell::Num(e), Cell::Num(ratio)])?;
    }

    let decreasing = errors.windows(2).all(|w| w[1] < w[0]);
    let listed: Vec<String> = errors.iter().map(|v| format!("{v:.4e}")).collect();
    report.check("error decreasing", decreasing, format!("[{}]", listed.join(", ")));

    // m^{δ,β}(ν_k) strictly decreasing in β, mode by mode
    let mut violations = 0usize;
    let mut min_margin = f64::INFINITY;
    for w in results.windows(2) {
        for (lo_beta, hi_beta) in w[0].1.iter().zip(&w[1].1) {
            if *lo_beta == 0.0 {
                continue;
            }
            let margin = (lo_beta - hi_beta) / lo_beta.abs();
            min_margin = min_margin.min(margin);
            if hi_beta >= lo_beta {
                violations += 1;
            }
        }
    }
    report.check(
        "multipliers decrease in beta",
        violations == 0,
        format!("{violations} violations, min relative margin {min_margin:.3e}"),
    );
    Ok(report)
}

/// Amplitude A of the oscillating remainder A·cos(‖ν‖δ − (n−1)π/4)‖ν‖^{−(n−1)/2}
/// of the β = −∞ multiplier.
pub fn limit_oscillation_amplitude(n: usize, delta: f64) -> f64 {
    let nf = n as f64;
    (2.0 / delta).powf((nf + 3.0) / 2.0) * gamma(nf / 2.0 + 1.0).unwrap_or(f64::NAN) / PI.sqrt()
}

/// Margin on the leading envelope for the β = −∞ decay check.
pub const LIMIT_ENVELOPE_MARGIN: f64 = 1.25;

/// m^{δ,β}(ν) for each β in the ladder (sorted toward −∞) beside m^{δ,−∞}(ν).
///
/// Checks: max_ν |m^{δ,β} − m^{δ,−∞}| decreases along the ladder; over the
/// last decade of the grid the β = −∞ column keeps an oscillation range of at
/// least 2/δ² for n = 1, and stays inside
/// −2n/δ² ± [`LIMIT_ENVELOPE_MARGIN`]·A‖ν‖^{−(n−1)/2} for n ≥ 2.
pub fn neg_inf_limit_study(
    n: usize,
    delta: f64,
    beta_ladder: &[f64],
    grid: &NuGrid,
    policy: &EvalPolicy,
) -> Result<StudyReport> {
    grid.validate()?;
    KernelParams::neg_inf(n, delta)?;
    if let Some(b) = beta_ladder.iter().find(|&&b| !(b <= -10.0)) {
        return Err(Error::Domain(format!("limit study needs beta <= -10, got {b}")));
    }
    let mut ladder = beta_ladder.to_vec();
    ladder.sort_by(|a, b| b.total_cmp(a));
    ladder.dedup();
    let params = ladder.iter().map(|&b| KernelParams::finite(n, delta, b)).collect::<Result<Vec<_>>>()?;

    let nus = grid.points();
    let rows = nus
        .par_iter()
        .map(|&nu| {
            let finite =
                params.iter().map(|p| Ok(multiplier(p, nu, policy)?.value)).collect::<Result<Vec<f64>>>()?;
            let limit = multiplier_limit_beta_neg_inf(n, delta, nu)?.value;
            Ok((finite, limit))
        })
        .collect::<Result<Vec<_>>>()?;

    let names: Vec<String> = ladder.iter().map(|b| format!("m_beta={b}")).collect();
    let mut columns: Vec<&str> = vec!["nu"];
    columns.extend(names.iter().map(String::as_str));
    columns.push("m_neg_inf");
    let mut report = StudyReport::new("beta to -inf limit", &columns);
    report.meta("n", n);
    report.meta("delta", delta);
    let betas: Vec<String> = ladder.iter().map(|b| b.to_string()).collect();
    report.meta("betas", betas.join(";"));
    report.meta("nu_min", grid.min);
    report.meta("nu_max", grid.max);
    report.meta("count", grid.count);
    report.meta("spacing", format!("{:?}", grid.spacing).to_lowercase());
    add_policy_meta(&mut report, policy);

    let mut sup_dev = vec![0.0_f64; ladder.len()];
    let mut pointwise_exceptions = 0usize;
    for (&nu, (finite, limit)) in nus.iter().zip(&rows) {
        let mut row = vec![Cell::Num(nu)];
        row.extend(finite.iter().map(|&v| Cell::Num(v)));
        row.push(Cell::Num(*limit));
        report.push_row(row)?;
        let dev: Vec<f64> = finite.iter().map(|v| (v - limit).abs()).collect();
        for (s, d) in sup_dev.iter_mut().zip(&dev) {
            *s = s.max(*d);
        }
        if dev.windows(2).any(|w| w[1] >= w[0]) {
            pointwise_exceptions += 1;
        }
    }
    if ladder.len() >= 2 {
        // the oscillating parts drift in phase with β, so single grid points may cross
        let listed: Vec<String> = sup_dev.iter().map(|v| format!("{v:.4e}")).collect();
        report.check(
            "approach in sup norm",
            sup_dev.windows(2).all(|w| w[1] < w[0]),
            format!(
                "max deviation per beta [{}]; {pointwise_exceptions} grid points where it does not shrink",
                listed.join(", ")
            ),
        );
    }

    let start = grid.max / 10.0;
    let tail: Vec<(f64, f64)> = nus.iter().zip(&rows).filter(|(nu, _)| **nu >= start).map(|(nu, r)| (*nu, r.1)).collect();
    if tail.len() >= 2 {
        let d2 = delta * delta;
        if n == 1 {
            let (lo, hi) = tail.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), (_, v)| (a.min(*v), b.max(*v)));
            report.check(
                "no limit for n = 1",
                hi - lo >= 2.0 / d2,
                format!("oscillation range {:.4e} over nu >= {start:.4e}, floor {:.4e}", hi - lo, 2.0 / d2),
            );
        } else {
            let target = -2.0 * n as f64 / d2;
            let amp = LIMIT_ENVELOPE_MARGIN * limit_oscillation_amplitude(n, delta);
            let worst = tail
                .iter()
                .map(|(nu, v)| (v - target).abs() / (amp * nu.powf(-(n as f64 - 1.0) / 2.0)))
                .fold(0.0_f64, f64::max);
            report.check(
                "approaches -2n/delta^2",
                worst <= 1.0,
                format!("max deviation / envelope = {worst:.4} over nu >= {start:.4e}"),
            );
        }
    }
    Ok(report)
}

/// Built-in test fields: `sin1` = sin(x₁) and `gauss-meanzero`, a
/// mean-subtracted periodic bump exp(Σ κ(cos(2π(x_i − ℓ_i/2)/ℓ_i) − 1)), κ = 10.
pub fn named_field(name: &str, torus: &TorusSpec) -> Result<GridField> {
    match name {
        "sin1" => Ok(GridField::from_fn(torus.clone(), |x| x[0].sin())),
        "gauss-meanzero" => {
            let ls = torus.lengths().to_vec();
            let g = GridField::from_fn(torus.clone(), |x| {
                let e: f64 = x.iter().zip(&ls).map(|(xi, l)| 10.0 * ((2.0 * PI * (xi - l / 2.0) / l).cos() - 1.0)).sum();
                e.exp()
            });
            Ok(g.mean_removed())
        }
        other => Err(Error::Invalid(format!("unknown field '{other}' (expected sin1 or gauss-meanzero)"))),
    }
}

/// Mean-zero real field with standard normal coefficients on modes with
/// max_i |k_i| ≤ max_mode, reproducible from `seed`.
pub fn random_mean_zero_field(torus: &TorusSpec, seed: u64, max_mode: i64) -> Result<SpectralField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut u = SpectralField::zeros(torus.clone());
    for pos in 0..torus.len() {
        let k = torus.mode_at(pos);
        let keep = k.iter().any(|&v| v != 0) && k.iter().all(|&v| v.abs() <= max_mode);
        // draw for every mode so the stream does not depend on max_mode
        let z = Complex64::new(normal(&mut rng), normal(&mut rng));
        if keep {
            u.coeffs_mut()[pos] = z;
        }
    }
    // project onto real fields
    let g = inverse_transform(&u).mean_removed();
    Ok(forward_transform(&g))
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_points_hit_endpoints() {
        let g = NuGrid::figure_default();
        let p = g.points();
        assert_eq!(p.len(), 1000);
        assert_eq!(p[0], 1.0);
        assert_eq!(p[999], 318.0 * PI);
        let l = NuGrid { min: 1.0, max: 1000.0, count: 4, spacing: Spacing::Log }.points();
        assert!((l[1] - 10.0).abs() < 1e-12 && (l[2] - 100.0).abs() < 1e-10);
    }

    #[test]
    fn grid_validation() {
        let bad = |min, max, count, spacing| NuGrid { min, max, count, spacing }.validate().is_err();
        assert!(bad(1.0, 2.0, 1, Spacing::Linear));
        assert!(bad(2.0, 1.0, 5, Spacing::Linear));
        assert!(bad(0.0, 1.0, 5, Spacing::Log));
        assert!(!bad(0.0, 1.0, 5, Spacing::Linear));
    }

    #[test]
    fn local_sweep_is_minus_nu_squared() {
        let p = KernelParams::finite(1, 0.1, 3.0).unwrap();
        let spec = SweepSpec::new(vec![p], NuGrid::figure_default(), vec![SweepOutput::Multiplier]);
        let r = figure_multiplier_sweep(&spec).unwrap();
        assert_eq!(r.rows.len(), 1000);
        for (nu, m) in r.column("nu").unwrap().iter().zip(r.column("multiplier").unwrap()) {
            assert_eq!(m, -nu * nu);
        }
    }

    #[test]
    fn oracle_requires_integrable_beta() {
        let p = KernelParams::finite(1, 0.1, 3.5).unwrap();
        let grid = NuGrid { min: 1.0, max: 2.0, count: 2, spacing: Spacing::Linear };
        assert!(figure_multiplier_sweep(&SweepSpec::new(vec![p], grid, vec![SweepOutput::Oracle])).is_err());
    }

    #[test]
    fn least_squares_recovers_line() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v - 1.0).collect();
        let (s, c, r) = least_squares_line(&x, &y);
        assert!((s - 2.0).abs() < 1e-14 && (c + 1.0).abs() < 1e-14 && r < 1e-14);
    }

    #[test]
    fn delta_study_on_single_mode() {
        let torus = TorusSpec::cube(1, 2.0 * PI, 64).unwrap();
        let f = named_field("sin1", &torus).unwrap();
        let r = convergence_study_delta(&f, 1.0, &[0.05, 0.4, 0.1, 0.2], &EvalPolicy::default()).unwrap();
        assert_eq!(r.column("delta").unwrap(), vec![0.4, 0.2, 0.1, 0.05]);
        assert!(r.all_checks_passed(), "{:?}", r.checks);
    }

    #[test]
    fn delta_study_zero_cases() {
        let torus = TorusSpec::cube(1, 2.0 * PI, 16).unwrap();
        let f = named_field("sin1", &torus).unwrap();
        let r = convergence_study_delta(&f, 3.0, &[0.4, 0.2], &EvalPolicy::default()).unwrap();
        assert!(r.column("error").unwrap().iter().all(|e| *e <= 1e-12));
        assert!(r.all_checks_passed());
        let zero = GridField::new(torus.clone(), vec![0.0; 16]).unwrap();
        let r = convergence_study_delta(&zero, 1.0, &[0.4, 0.2], &EvalPolicy::default()).unwrap();
        assert!(r.column("error").unwrap().iter().all(|e| *e == 0.0));
        assert!(convergence_study_delta(&f, 3.5, &[0.4], &EvalPolicy::default()).is_err());
    }

    #[test]
    fn beta_study_with_local_endpoint() {
        let torus = TorusSpec::cube(1, 2.0 * PI, 32).unwrap();
        let f = named_field("sin1", &torus).unwrap();
        let r = convergence_study_beta(&f, 0.5, &[2.0, 2.5, 2.9, 2.99, 3.0], 0.5, &EvalPolicy::default()).unwrap();
        let e = r.column("error").unwrap();
        assert!(e[4] <= 1e-14, "{e:?}");
        assert!(r.all_checks_passed(), "{:?}", r.checks);
        assert!(convergence_study_beta(&f, 0.5, &[1.0], 0.5, &EvalPolicy::default()).is_err());
        assert!(convergence_study_beta(&f, 0.5, &[2.0], 2.0, &EvalPolicy::default()).is_err());
    }

    #[test]
    fn limit_study_single_entry_is_well_formed() {
        let grid = NuGrid { min: 1.0, max: 100.0, count: 50, spacing: Spacing::Linear };
        let r = neg_inf_limit_study(2, 0.1, &[-10.0], &grid, &EvalPolicy::default()).unwrap();
        assert_eq!(r.columns, vec!["nu", "m_beta=-10", "m_neg_inf"]);
        assert_eq!(r.rows.len(), 50);
        assert!(neg_inf_limit_study(2, 0.1, &[-5.0], &grid, &EvalPolicy::default()).is_err());
    }

    #[test]
    fn limit_study_default_checks() {
        let grid = NuGrid::figure_default();
        for n in 1..=3 {
            let r = neg_inf_limit_study(n, 0.1, &[-100.0, -500.0], &grid, &EvalPolicy::default()).unwrap();
            assert!(r.all_checks_passed(), "n={n}: {:?}", r.checks);
        }
    }

    #[test]
    fn named_fields_are_mean_zero() {
        let torus = TorusSpec::cube(2, 2.0 * PI, 16).unwrap();
        for name in ["sin1", "gauss-meanzero"] {
            assert!(named_field(name, &torus).unwrap().mean().abs() < 1e-14);
        }
        assert!(named_field("nope", &torus).is_err());
    }

    #[test]
    fn random_fields_are_reproducible_and_real() {
        let torus = TorusSpec::new(vec![1.0, 2.0], vec![8, 6]).unwrap();
        let a = random_mean_zero_field(&torus, 7, 2).unwrap();
        let b = random_mean_zero_field(&torus, 7, 2).unwrap();
        assert_eq!(a, b);
        assert!(a.mean().norm() < 1e-15);
        assert!(a.is_conjugate_symmetric(1e-14));
        assert_ne!(a, random_mean_zero_field(&torus, 8, 2).unwrap());
    }
}
