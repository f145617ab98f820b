use std::f64::consts::PI;
use std::io::Write;

use perilap_core::experiments::{
    convergence_study_beta, convergence_study_delta, default_grid_size, figure_multiplier_sweep, named_field,
    neg_inf_limit_study, NuGrid, Spacing, SweepOutput, SweepSpec,
};
use perilap_core::multipliers::{multiplier, Beta, KernelParams};
use perilap_core::report::{Cell, StudyReport};
use perilap_core::specfun::EvalPolicy;
use perilap_core::spectral::{
    apply_operator_spectral, forward_transform, inverse_transform, solve_poisson, GridField, TorusSpec,
};
use perilap_core::Error;

use crate::args::{
    Cli, Command, Common, Format, GridArgs, KernelArgs, MultiplierArgs, NeginfArgs, OutputArg, Preset, SolveArgs,
    SpacingArg, StudyBetaArgs, StudyDeltaArgs, SweepArgs, TorusArgs,
};

/// Largest slope change tolerated when the study grid is doubled.
const REFINEMENT_SLOPE_TOL: f64 = 0.05;

#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Runtime(String),
    Checks(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Runtime(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Validation(msg.into())
}

pub fn run(cli: &Cli) -> Outcome {
    let policy = policy(&cli.common)?;
    let report = match &cli.command {
        Command::Multiplier(a) => cmd_multiplier(a, &policy)?,
        Command::Sweep(a) => cmd_sweep(a, &policy)?,
        Command::Solve(a) => cmd_solve(a, &policy)?,
        Command::StudyDelta(a) => cmd_study_delta(a, &policy)?,
        Command::StudyBeta(a) => cmd_study_beta(a, &policy)?,
        Command::Neginf(a) => cmd_neginf(a, &policy)?,
    };
    emit(&report, &cli.common)?;
    let failed: Vec<String> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Checks(failed))
    }
}

fn policy(common: &Common) -> Result<EvalPolicy, Failure> {
    let mut p = EvalPolicy::default();
    if let Some(v) = common.rel_tol {
        p.rel_tol = v;
    }
    if let Some(v) = common.abs_tol {
        p.abs_tol = v;
    }
    if let Some(v) = common.max_terms {
        p.max_terms = v;
    }
    if let Some(v) = common.cancellation_guard {
        p.cancellation_guard = v;
    }
    if let Some(v) = common.large_arg_threshold {
        p.large_arg_threshold = v;
    }
    if let Some(v) = common.asymptotic_rel_tol {
        p.asymptotic_rel_tol = v;
    }
    p.validate()?;
    Ok(p)
}

fn emit(report: &StudyReport, common: &Common) -> Outcome {
    let stamp = (!common.no_timestamp)
        .then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    let text = match common.format {
        Format::Csv => report.to_csv(stamp.as_deref()),
        Format::Json => report.to_json(stamp.as_deref()),
    };
    let written = match &common.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            // a closed pipe (e.g. `| head`) is not a failure
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            r => r.map_err(|e| e.to_string()),
        },
    };
    written.map_err(Failure::Runtime)
}

fn parse_beta(raw: &str) -> Result<Beta, Failure> {
    let s = raw.trim();
    if s.eq_ignore_ascii_case("-inf") || s.eq_ignore_ascii_case("-infinity") {
        return Ok(Beta::NegInf);
    }
    s.parse::<f64>().map(Beta::Finite).map_err(|_| invalid(format!("beta must be a number or -inf, got '{raw}'")))
}

fn kernel(n: usize, delta: f64, beta: Beta) -> Result<KernelParams, Failure> {
    if delta == 0.0 {
        return Err(invalid("delta must be > 0; request the classical Laplacian with --local"));
    }
    Ok(KernelParams::new(n, delta, beta)?)
}

fn kernel_from(a: &KernelArgs) -> Result<KernelParams, Failure> {
    if a.local {
        // the classical Laplacian does not depend on the horizon
        return kernel(a.n, a.delta.unwrap_or(1.0), Beta::Finite(a.n as f64 + 2.0));
    }
    let delta = a.delta.ok_or_else(|| invalid("--delta is required unless --local is given"))?;
    let beta = a.beta.as_deref().ok_or_else(|| invalid("--beta is required unless --local is given"))?;
    kernel(a.n, delta, parse_beta(beta)?)
}

fn add_kernel_meta(report: &mut StudyReport, p: &KernelParams, local: bool) {
    report.meta("n", p.n());
    report.meta("delta", p.delta());
    report.meta("beta", p.beta());
    report.meta("local", local);
}

fn add_policy_meta(report: &mut StudyReport, policy: &EvalPolicy) {
    report.meta("rel_tol", policy.rel_tol);
    report.meta("abs_tol", policy.abs_tol);
    report.meta("max_terms", policy.max_terms);
    report.meta("cancellation_guard", policy.cancellation_guard);
    report.meta("large_arg_threshold", policy.large_arg_threshold);
    report.meta("asymptotic_rel_tol", policy.asymptotic_rel_tol);
}

fn cmd_multiplier(a: &MultiplierArgs, policy: &EvalPolicy) -> Result<StudyReport, Failure> {
    let p = kernel_from(&a.kernel)?;
    let mut report = StudyReport::new("multiplier", &["nu_norm", "value", "method", "est_error"]);
    add_kernel_meta(&mut report, &p, a.kernel.local);
    add_policy_meta(&mut report, policy);
    for &nu in &a.nu {
        let m = multiplier(&p, nu, policy)?;
        report.push_row(vec![Cell::Num(nu), Cell::Num(m.value), Cell::Text(m.method.to_string()), Cell::Num(m.est_error)])?;
    }
    Ok(report)
}

fn nu_grid(g: &GridArgs) -> NuGrid {
    NuGrid {
        min: g.nu_min,
        max: g.nu_max.unwrap_or(318.0 * PI),
        count: g.count,
        spacing: match g.spacing {
            SpacingArg::Linear => Spacing::Linear,
            SpacingArg::Log => Spacing::Log,
        },
    }
}

fn cmd_sweep(a: &SweepArgs, policy: &EvalPolicy) -> Result<StudyReport, Failure> {
    let mut spec = match a.preset {
        Some(Preset::Figure1) => SweepSpec::figure_one()?,
        Some(Preset::Figure2) => SweepSpec::figure_two()?,
        None => {
            if a.n.is_empty() || a.beta.is_empty() {
                return Err(invalid("sweep needs --n and --beta, or --preset"));
            }
            let mut params = Vec::new();
            for &n in &a.n {
                for &d in &a.delta {
                    for b in &a.beta {
                        params.push(kernel(n, d, parse_beta(b)?)?);
                    }
                }
            }
            SweepSpec::new(params, NuGrid::figure_default(), Vec::new())
        }
    };
    spec.grid = nu_grid(&a.grid);
    spec.policy = *policy;
    spec.oracle_tol = a.oracle_tol;
    for o in &a.outputs {
        let o = match o {
            OutputArg::AsymptoteLarge => SweepOutput::AsymptoteLarge,
            OutputArg::AsymptoteSmall => SweepOutput::AsymptoteSmall,
            OutputArg::LimitNegInf => SweepOutput::LimitNegInf,
            OutputArg::Oracle => SweepOutput::Oracle,
        };
        if !spec.outputs.contains(&o) {
            spec.outputs.push(o);
        }
    }
    Ok(figure_multiplier_sweep(&spec)?)
}

fn torus_from(t: &TorusArgs, n: usize) -> Result<TorusSpec, Failure> {
    let per_axis = |v: &[f64], what: &str| -> Result<Vec<f64>, Failure> {
        match v.len() {
            1 => Ok(vec![v[0]; n]),
            k if k == n => Ok(v.to_vec()),
            k => Err(invalid(format!("--{what} needs 1 or {n} values, got {k}"))),
        }
    };
    let lengths = per_axis(&t.lengths, "l")?;
    let grid: Vec<f64> = if t.grid.is_empty() {
        vec![default_grid_size(n) as f64]
    } else {
        t.grid.iter().map(|&v| v as f64).collect()
    };
    let grid = per_axis(&grid, "N")?.into_iter().map(|v| v as usize).collect();
    Ok(TorusSpec::new(lengths, grid)?)
}

fn is_builtin(name: &str) -> bool {
    matches!(name, "sin1" | "gauss-meanzero")
}

/// Builtin name, or a CSV file of samples in row-major order (axis 0 slowest).
fn load_field(name: &str, torus: &TorusSpec) -> Result<GridField, Failure> {
    if is_builtin(name) {
        return Ok(named_field(name, torus)?);
    }
    let text = std::fs::read_to_string(name)
        .map_err(|e| invalid(format!("field '{name}' is neither sin1, gauss-meanzero nor a readable file: {e}")))?;
    let mut samples = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        for tok in line.split([',', ' ', '\t']).filter(|t| !t.is_empty()) {
            let v: f64 = tok.parse().map_err(|_| invalid(format!("field file {name}: cannot parse '{tok}'")))?;
            if !v.is_finite() {
                return Err(invalid(format!("field file {name}: non-finite sample {v}")));
            }
            samples.push(v);
        }
    }
    Ok(GridField::new(torus.clone(), samples)?)
}

fn add_torus_args_meta(report: &mut StudyReport, t: &TorusArgs) {
    report.meta("field", &t.field);
}

fn cmd_solve(a: &SolveArgs, policy: &EvalPolicy) -> Result<StudyReport, Failure> {
    let p = kernel_from(&a.kernel)?;
    let torus = torus_from(&a.torus, p.n())?;
    let f = load_field(&a.torus.field, &torus)?;
    let f_hat = forward_transform(&f);
    let u_hat = solve_poisson(&f_hat, &p, policy)?;
    let residual = apply_operator_spectral(&u_hat, &p, policy)?.sub(&f_hat)?.max_abs() / f_hat.max_abs().max(f64::MIN_POSITIVE);
    let u = inverse_transform(&u_hat);

    let n = p.n();
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut columns: Vec<&str> = names.iter().map(String::as_str).collect();
    columns.extend(["f", "u"]);
    let mut report = StudyReport::new("poisson solve", &columns);
    add_kernel_meta(&mut report, &p, a.kernel.local);
    add_torus_args_meta(&mut report, &a.torus);
    let ls: Vec<String> = torus.lengths().iter().map(|v| v.to_string()).collect();
    let ns: Vec<String> = torus.grid_sizes().iter().map(|v| v.to_string()).collect();
    report.meta("lengths", ls.join(";"));
    report.meta("grid_sizes", ns.join(";"));
    add_policy_meta(&mut report, policy);
    report.meta("spectral_residual", format!("{residual:e}"));
    for pos in 0..torus.len() {
        let mut row: Vec<Cell> = torus.point_at(pos).into_iter().map(Cell::Num).collect();
        row.push(Cell::Num(f.samples()[pos]));
        row.push(Cell::Num(u.samples()[pos]));
        report.push_row(row)?;
    }
    Ok(report)
}

fn doubled(t: &TorusSpec) -> Result<TorusSpec, Failure> {
    Ok(TorusSpec::new(t.lengths().to_vec(), t.grid_sizes().iter().map(|v| 2 * v).collect())?)
}

/// Reruns a study on the doubled grid and records whether its conclusions hold.
fn refinement_check(
    report: &mut StudyReport,
    t: &TorusArgs,
    torus: &TorusSpec,
    study: impl Fn(&GridField) -> Result<StudyReport, Error>,
) -> Outcome {
    if !is_builtin(&t.field) {
        report.meta("grid_doubling", "skipped for file fields");
        return Ok(());
    }
    let fine_torus = doubled(torus)?;
    let fine = study(&named_field(&t.field, &fine_torus)?)?;
    let same_checks = report.checks.len() == fine.checks.len()
        && report.checks.iter().zip(&fine.checks).all(|(a, b)| a.passed == b.passed);
    let slope_shift = match (report.column("slope"), fine.column("slope")) {
        (Some(a), Some(b)) => a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max),
        _ => 0.0,
    };
    let ns: Vec<String> = fine_torus.grid_sizes().iter().map(|v| v.to_string()).collect();
    report.check(
        "grid doubling",
        same_checks && slope_shift <= REFINEMENT_SLOPE_TOL,
        format!("grid {} gives the same check outcomes: {same_checks}; max slope change {slope_shift:.2e}", ns.join(";")),
    );
    Ok(())
}

fn cmd_study_delta(a: &StudyDeltaArgs, policy: &EvalPolicy) -> Result<StudyReport, Failure> {
    let torus = torus_from(&a.torus, a.n)?;
    let f = load_field(&a.torus.field, &torus)?;
    let beta = a.beta.unwrap_or(a.n as f64);
    let study = |g: &GridField| convergence_study_delta(g, beta, &a.deltas, policy);
    let mut report = study(&f)?;
    add_torus_args_meta(&mut report, &a.torus);
    refinement_check(&mut report, &a.torus, &torus, study)?;
    Ok(report)
}

fn cmd_study_beta(a: &StudyBetaArgs, policy: &EvalPolicy) -> Result<StudyReport, Failure> {
    let torus = torus_from(&a.torus, a.n)?;
    let f = load_field(&a.torus.field, &torus)?;
    let nf = a.n as f64;
    let betas = if a.betas.is_empty() { vec![nf + 1.0, nf + 1.5, nf + 1.9, nf + 1.99] } else { a.betas.clone() };
    let study = |g: &GridField| convergence_study_beta(g, a.delta, &betas, a.epsilon, policy);
    let mut report = study(&f)?;
    add_torus_args_meta(&mut report, &a.torus);
    refinement_check(&mut report, &a.torus, &torus, study)?;
    Ok(report)
}

fn cmd_neginf(a: &NeginfArgs, policy: &EvalPolicy) -> Result<StudyReport, Failure> {
    Ok(neg_inf_limit_study(a.n, a.delta, &a.betas, &nu_grid(&a.grid), policy)?)
}
