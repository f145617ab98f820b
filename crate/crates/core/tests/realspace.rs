use perilap_core::multipliers::{multiplier, multiplier_limit_beta_neg_inf, KernelParams};
use perilap_core::realspace::{apply_limit_operator_sphere, apply_nonlocal_laplacian, fields, FnField, Smoothness};
use perilap_core::specfun::EvalPolicy;
use perilap_core::Error;

#[test]
fn sphere_average_reproduces_limit_multiplier() {
    for (n, nu) in [(1, vec![3.0]), (2, vec![2.0, -5.0]), (3, vec![1.0, 2.0, 4.0])] {
        let norm = nu.iter().map(|v: &f64| v * v).sum::<f64>().sqrt();
        let v = apply_limit_operator_sphere(&fields::plane_wave(nu.clone()), &vec![0.0; n], n, 0.4, 1e-12).unwrap();
        let m = multiplier_limit_beta_neg_inf(n, 0.4, norm).unwrap().value;
        assert!((v - m).abs() <= 1e-9 * m.abs(), "n={n}: {v} vs {m}");
    }
}

#[test]
fn large_negative_beta_approaches_sphere_average() {
    let u = fields::plane_wave(vec![2.0, 1.0, -1.5]);
    let x = [0.3, -0.2, 0.1];
    let lim = apply_limit_operator_sphere(&u, &x, 3, 0.5, 1e-12).unwrap();
    let deviation = |beta: f64| {
        let p = KernelParams::finite(3, 0.5, beta).unwrap();
        (apply_nonlocal_laplacian(&u, &x, &p, 1e-12).unwrap() - lim).abs()
    };
    let (d100, d1000) = (deviation(-100.0), deviation(-1000.0));
    assert!(d1000 < d100 && d1000 <= 1e-3 * lim.abs(), "{d100} {d1000}");
}

#[test]
fn c0_fields_only_for_integrable_kernels() {
    let u = FnField::new(2, Smoothness::C0, |x: &[f64]| x[0].abs());
    let ok = KernelParams::finite(2, 0.5, 1.0).unwrap();
    // a kink crossing the ball limits the angular rule to algebraic convergence
    let coarse = apply_nonlocal_laplacian(&u, &[0.2, 0.1], &ok, 1e-3).unwrap();
    let fine = apply_nonlocal_laplacian(&u, &[0.2, 0.1], &ok, 1e-4).unwrap();
    assert!((coarse - fine).abs() <= 1e-3 * fine.abs());
    let singular = KernelParams::finite(2, 0.5, 2.5).unwrap();
    assert!(matches!(apply_nonlocal_laplacian(&u, &[0.2, 0.1], &singular, 1e-10), Err(Error::Domain(_))));
}

#[test]
fn kink_is_resolved_for_integrable_kernels() {
    // |x| in one dimension: L u(0) = (c/2)∫_{−δ}^{δ} 2|z|/|z|^β dz
    let u = FnField::new(1, Smoothness::C0, |x: &[f64]| x[0].abs());
    let (delta, beta) = (0.5, 0.5);
    let p = KernelParams::finite(1, delta, beta).unwrap();
    let c = perilap_core::multipliers::scaling_constant(&p).unwrap();
    let exact = 0.5 * c * 4.0 * delta.powf(2.0 - beta) / (2.0 - beta);
    let v = apply_nonlocal_laplacian(&u, &[0.0], &p, 1e-12).unwrap();
    assert!((v - exact).abs() <= 1e-9 * exact, "{v} vs {exact}");
}

#[test]
fn extended_beta_is_outside_the_real_space_domain() {
    let p = KernelParams::finite(1, 0.5, 3.5).unwrap();
    assert!(apply_nonlocal_laplacian(&fields::sin_first(1), &[0.0], &p, 1e-10).is_err());
    let local = KernelParams::finite(1, 0.5, 3.0).unwrap();
    assert!(apply_nonlocal_laplacian(&fields::sin_first(1), &[0.0], &local, 1e-10).is_err());
    let _ = multiplier(&p, 1.0, &EvalPolicy::default()).unwrap();
}
