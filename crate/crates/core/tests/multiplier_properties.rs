use std::f64::consts::PI;

use perilap_core::multipliers::{
    asymptotic_small_nu, multiplier, multiplier_limit_beta_neg_inf, multiplier_quadrature_oracle,
    scaling_constant, Beta, KernelParams, Method,
};
use perilap_core::quadrature::integrate;
use perilap_core::specfun::EvalPolicy;
use proptest::prelude::*;

fn pol() -> EvalPolicy {
    EvalPolicy::default()
}

fn valid_params() -> impl Strategy<Value = KernelParams> {
    (1usize..=3, 0.05f64..3.0, -8.0f64..1.0).prop_filter_map("excluded beta", |(n, d, t)| {
        // t ∈ (−8, 1) maps to β ∈ (n−6, n+4)
        KernelParams::finite(n, d, n as f64 + 2.0 + 2.0 * t).ok()
    })
}

fn m(p: &KernelParams, nu: f64) -> f64 {
    multiplier(p, nu, &pol()).unwrap().value
}

proptest! {
    #[test]
    fn scaling_identity(p in valid_params(), nu in 0.01f64..300.0) {
        let lhs = m(&p, nu);
        let d = p.delta();
        let rhs = m(&p.with_delta(1.0).unwrap(), d * nu) / (d * d);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0), "{lhs} vs {rhs}");
    }

    #[test]
    fn nonpositive_for_integrable_kernels(n in 1usize..=3, d in 0.05f64..3.0, t in 0.0f64..1.0, nu in 0.0f64..500.0) {
        let beta = -6.0 + t * (n as f64 + 8.0 - 1e-6);
        let p = KernelParams::finite(n, d, beta).unwrap();
        prop_assert!(m(&p, nu) <= 0.0);
    }

    #[test]
    fn decreasing_in_beta(n in 1usize..=3, d in 0.05f64..2.0, nu in 0.1f64..100.0, t1 in 0.0f64..1.0, t2 in 0.0f64..1.0) {
        prop_assume!((t1 - t2).abs() > 1e-3);
        // for n = 1 strict monotonicity fails pointwise below β ≈ −3.4
        let floor = if n == 1 { -3.0 } else { -5.0 };
        let span = n as f64 + 2.0 - floor;
        let (lo, hi) = (floor + span * t1.min(t2), floor + span * t1.max(t2));
        let m_lo = m(&KernelParams::finite(n, d, lo).unwrap(), nu);
        let m_hi = m(&KernelParams::finite(n, d, hi).unwrap(), nu);
        prop_assert!(m_hi < m_lo, "beta {lo} -> {m_lo}, beta {hi} -> {m_hi}");
    }

    #[test]
    fn small_nu_expansion(p in valid_params(), x in 1e-4f64..1e-2) {
        let nu = 2.0 * x / p.delta();
        let v = m(&p, nu);
        let approx = asymptotic_small_nu(&p, nu).unwrap();
        // next term is at most ν²x⁴/(6b(b+1)) ≤ ν²x⁴/22.5
        prop_assert!((v - approx).abs() <= 0.1 * nu * nu * x.powi(4) + 1e-14 * v.abs());
    }

    #[test]
    fn agrees_with_oracle(n in 1usize..=3, d in 0.05f64..2.0, t in 0.0f64..1.0, nu in 0.1f64..80.0) {
        let beta = -4.0 + t * (n as f64 + 6.0 - 1e-3);
        let p = KernelParams::finite(n, d, beta).unwrap();
        let o = multiplier_quadrature_oracle(&p, nu, 1e-10).unwrap();
        prop_assert!((m(&p, nu) - o).abs() <= 1e-8 * o.abs().max(1.0));
    }

    #[test]
    fn local_case_is_exact(n in 1usize..=3, d in 1e-3f64..1e3, nu in 0.0f64..1e4) {
        let r = multiplier(&KernelParams::finite(n, d, n as f64 + 2.0).unwrap(), nu, &pol()).unwrap();
        prop_assert_eq!(r.method, Method::ExactLocal);
        prop_assert_eq!(r.value, -nu * nu);
    }

    #[test]
    fn limit_bounds_finite_beta(n in 1usize..=3, d in 0.05f64..2.0, x in 0.01f64..2.0, beta in -60.0f64..-10.0) {
        // m increases toward m^{δ,−∞} as β decreases; for large νδ the
        // oscillating parts drift in phase with β and the ordering can flip
        let nu = 2.0 * x / d;
        let lim = multiplier_limit_beta_neg_inf(n, d, nu).unwrap().value;
        prop_assert!(m(&KernelParams::finite(n, d, beta).unwrap(), nu) < lim);
    }
}

#[test]
fn excluded_and_invalid_betas_are_rejected() {
    assert!(KernelParams::finite(1, 0.1, 5.0).is_err());
    assert!(KernelParams::finite(2, 0.1, 8.0).is_err());
    assert!(KernelParams::finite(1, 0.0, 1.0).is_err());
    assert!(KernelParams::finite(1, 0.1, f64::NAN).is_err());
    assert_eq!(KernelParams::finite(1, 0.1, f64::NEG_INFINITY).unwrap().beta(), Beta::NegInf);
}

/// Direct polar integration of (c/2)∫_{B_δ} (2cos(ν·z) − 2)/‖z‖^β dz in the
/// plane, with the angle handled by the periodic trapezoid rule.
#[test]
fn disk_integral_in_two_dimensions() {
    let (delta, beta, nu) = (0.5, 1.0, 7.0);
    let p = KernelParams::finite(2, delta, beta).unwrap();
    let c = scaling_constant(&p).unwrap();
    let angular = |r: f64| {
        let k = 256;
        let h = 2.0 * PI / k as f64;
        (0..k).map(|j| (nu * r * (h * j as f64).cos()).cos() - 1.0).sum::<f64>() * h
    };
    let radial = integrate(|r| r.powf(1.0 - beta) * 2.0 * angular(r), 0.0, delta, 1e-14, 1e-13, 10_000).unwrap();
    let direct = 0.5 * c * radial.value;
    let v = m(&p, nu);
    assert!((v - direct).abs() <= 1e-10 * v.abs(), "{v} vs {direct}");
}

#[test]
fn monotonicity_in_beta_fails_pointwise_for_very_negative_beta_in_one_dimension() {
    // mpmath reference values; direct quadrature of the kernel integral agrees
    let (d, nu) = (0.2102809104000488, 47.462816362348555);
    let lo = m(&KernelParams::finite(1, d, -5.0).unwrap(), nu);
    let hi = m(&KernelParams::finite(1, d, -2.83975823349846).unwrap(), nu);
    assert!((lo + 89.477_320_461_027_3).abs() < 1e-9 * 89.5, "{lo}");
    assert!((hi + 88.132_690_485_208_87).abs() < 1e-9 * 88.2, "{hi}");
    assert!(hi > lo);
}
