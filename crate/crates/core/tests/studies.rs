use std::f64::consts::PI;

use perilap_core::experiments::{
    convergence_study_delta, figure_multiplier_sweep, named_field, neg_inf_limit_study, NuGrid, Spacing,
    SweepOutput, SweepSpec,
};
use perilap_core::multipliers::KernelParams;
use perilap_core::specfun::EvalPolicy;
use perilap_core::spectral::TorusSpec;

#[test]
fn figure_sweeps_have_one_row_per_grid_point() {
    let spec = SweepSpec::figure_one().unwrap();
    let r = figure_multiplier_sweep(&spec).unwrap();
    assert_eq!(r.rows.len(), 1000 * spec.params.len());
    let spec = SweepSpec::figure_two().unwrap();
    let r = figure_multiplier_sweep(&spec).unwrap();
    assert_eq!(r.rows.len(), 1000 * spec.params.len());
    assert!(r.columns.contains(&"limit_neg_inf".to_string()));
}

#[test]
fn reports_are_bit_reproducible() {
    let params = vec![KernelParams::finite(2, 0.3, 1.5).unwrap(), KernelParams::neg_inf(2, 0.3).unwrap()];
    let grid = NuGrid { min: 0.5, max: 200.0, count: 64, spacing: Spacing::Log };
    let outputs = vec![SweepOutput::AsymptoteLarge, SweepOutput::AsymptoteSmall, SweepOutput::LimitNegInf];
    let spec = SweepSpec::new(params, grid, outputs);
    let a = figure_multiplier_sweep(&spec).unwrap();
    let b = figure_multiplier_sweep(&spec).unwrap();
    assert_eq!(a.to_csv(None), b.to_csv(None));
    assert_eq!(a.to_json(None), b.to_json(None));
}

#[test]
fn oracle_column_matches_multiplier() {
    let params = vec![KernelParams::finite(3, 0.2, 2.5).unwrap()];
    let grid = NuGrid { min: 0.0, max: 60.0, count: 13, spacing: Spacing::Linear };
    let r = figure_multiplier_sweep(&SweepSpec::new(params, grid, vec![SweepOutput::Oracle])).unwrap();
    for (m, o) in r.column("multiplier").unwrap().iter().zip(r.column("oracle").unwrap()) {
        assert!((m - o).abs() <= 1e-8 * o.abs().max(1.0));
    }
}

#[test]
fn delta_study_is_grid_independent_for_a_single_mode() {
    let study = |n| {
        let torus = TorusSpec::cube(1, 2.0 * PI, n).unwrap();
        let f = named_field("sin1", &torus).unwrap();
        convergence_study_delta(&f, 0.0, &[0.4, 0.2, 0.1], &EvalPolicy::default()).unwrap()
    };
    let (coarse, fine) = (study(32), study(64));
    for (a, b) in coarse.column("error").unwrap().iter().zip(fine.column("error").unwrap()) {
        assert!((a - b).abs() <= 1e-12 * a);
    }
}

#[test]
fn smooth_bump_converges_at_second_order() {
    let torus = TorusSpec::cube(2, 2.0 * PI, 64).unwrap();
    let f = named_field("gauss-meanzero", &torus).unwrap();
    let r = convergence_study_delta(&f, 1.0, &[0.1, 0.05, 0.025], &EvalPolicy::default()).unwrap();
    assert!(r.all_checks_passed(), "{:?}", r.checks);
}

#[test]
fn limit_study_report_shape() {
    let grid = NuGrid { min: 1.0, max: 100.0, count: 20, spacing: Spacing::Linear };
    let r = neg_inf_limit_study(3, 0.2, &[-500.0, -20.0, -100.0], &grid, &EvalPolicy::default()).unwrap();
    assert_eq!(r.columns, vec!["nu", "m_beta=-20", "m_beta=-100", "m_beta=-500", "m_neg_inf"]);
    assert!(r.rows.iter().all(|row| row.len() == 5));
}
