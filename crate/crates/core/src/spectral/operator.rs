use num_complex::Complex64;
use rayon::prelude::*;

use super::field::SpectralField;
use super::torus::TorusSpec;
use crate::error::{Error, Result};
use crate::multipliers::{multiplier, KernelParams};
use crate::specfun::EvalPolicy;

/// Relative threshold on |f̂_0| for the mean-zero compatibility check.
pub const MEAN_ZERO_TOL: f64 = 1e-12;
/// Eigenvalues smaller than this in magnitude are never divided by.
pub const SINGULAR_EIGENVALUE: f64 = 1e-300;
/// Squared frequencies within this relative distance share one evaluation.
const RADIAL_GROUP_TOL: f64 = 1e-12;

/// m(ν_k) for every stored mode, aligned with the coefficient layout.
///
/// Multipliers are radial, so modes are grouped by ‖ν_k‖² and each group is
/// evaluated once (in parallel). The k = 0 entry is exactly 0.
pub fn eigenvalue_array(torus: &TorusSpec, params: &KernelParams, policy: &EvalPolicy) -> Result<Vec<f64>> {
    if torus.n() != params.n() {
        return Err(Error::ShapeMismatch(format!(
            "torus dimension {} does not match kernel dimension {}",
            torus.n(),
            params.n()
        )));
    }
    let norms2: Vec<f64> = (0..torus.len())
        .map(|pos| torus.frequency_of(&torus.mode_at(pos)).iter().map(|v| v * v).sum())
        .collect();
    let mut order: Vec<usize> = (0..norms2.len()).collect();
    order.sort_by(|&a, &b| norms2[a].total_cmp(&norms2[b]));

    // group[i] lists positions whose ‖ν‖² lies within tolerance of the first member
    let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
    for pos in order {
        let v = norms2[pos];
        match groups.last_mut() {
            Some((rep, members)) if (v - *rep).abs() <= RADIAL_GROUP_TOL * rep.abs() => members.push(pos),
            _ => groups.push((v, vec![pos])),
        }
    }
    let values: Vec<f64> = groups
        .par_iter()
        .map(|(rep, _)| {
            if *rep == 0.0 {
                Ok(0.0)
            } else {
                multiplier(params, rep.sqrt(), policy).map(|r| r.value)
            }
        })
        .collect::<Result<_>>()?;
    let mut out = vec![0.0; norms2.len()];
    for ((_, members), value) in groups.iter().zip(values) {
        for &pos in members {
            out[pos] = value;
        }
    }
    Ok(out)
}

/// Applies L^{δ,β} mode by mode: (Lu)^_k = m(ν_k)·û_k.
pub fn apply_operator_spectral(u: &SpectralField, params: &KernelParams, policy: &EvalPolicy) -> Result<SpectralField> {
    let eig = eigenvalue_array(u.torus(), params, policy)?;
    let coeffs = u.coeffs().iter().zip(&eig).map(|(c, m)| c * m).collect();
    SpectralField::new(u.torus().clone(), coeffs)
}

/// Mean-zero solution of L^{δ,β}u = f: û_k = f̂_k/m(ν_k) for k ≠ 0, û_0 = 0.
///
/// Fails when |f̂_0| exceeds [`MEAN_ZERO_TOL`]·max|f̂_k|.
pub fn solve_poisson(f: &SpectralField, params: &KernelParams, policy: &EvalPolicy) -> Result<SpectralField> {
    let mean = f.mean().norm();
    let threshold = MEAN_ZERO_TOL * f.max_abs();
    if mean > threshold {
        return Err(Error::Compatibility { mean, threshold });
    }
    let eig = eigenvalue_array(f.torus(), params, policy)?;
    let torus = f.torus();
    let zero = torus.position_of(&vec![0; torus.n()]).expect("zero mode is always stored");
    let mut coeffs = Vec::with_capacity(eig.len());
    for (pos, (c, m)) in f.coeffs().iter().zip(&eig).enumerate() {
        if pos == zero {
            coeffs.push(Complex64::new(0.0, 0.0));
        } else if m.abs() < SINGULAR_EIGENVALUE {
            return Err(Error::SingularEigenvalue { index: torus.mode_at(pos), value: *m });
        } else {
            coeffs.push(c / m);
        }
    }
    SpectralField::new(torus.clone(), coeffs)
}

/// H^s norm (Σ_k (1+‖k‖²)^s |û_k|²)^{1/2} with k the integer mode vector.
pub fn sobolev_norm(u: &SpectralField, s: f64) -> f64 {
    let torus = u.torus();
    u.coeffs()
        .iter()
        .enumerate()
        .map(|(pos, c)| {
            let k2: f64 = torus.mode_at(pos).iter().map(|&k| (k * k) as f64).sum();
            (1.0 + k2).powf(s) * c.norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::multipliers::multiplier_quadrature_oracle;

    fn circle(m: usize) -> TorusSpec {
        TorusSpec::cube(1, 2.0 * PI, m).unwrap()
    }

    #[test]
    fn zero_mode_and_local_case() {
        let t = TorusSpec::new(vec![1.0, 3.0], vec![8, 6]).unwrap();
        let p = KernelParams::finite(2, 0.2, 4.0).unwrap();
        let eig = eigenvalue_array(&t, &p, &EvalPolicy::default()).unwrap();
        for (pos, m) in eig.iter().enumerate() {
            let nu2: f64 = t.frequency_of(&t.mode_at(pos)).iter().map(|v| v * v).sum();
            assert!((m + nu2).abs() <= 1e-12 * nu2, "{m} vs {nu2}");
        }
        assert_eq!(eig[t.position_of(&[0, 0]).unwrap()], 0.0);
    }

    #[test]
    fn mode_five_matches_oracle() {
        let t = circle(16);
        let p = KernelParams::finite(1, 0.1, 1.0).unwrap();
        let eig = eigenvalue_array(&t, &p, &EvalPolicy::default()).unwrap();
        let oracle = multiplier_quadrature_oracle(&p, 5.0, 1e-12).unwrap();
        let got = eig[t.position_of(&[5]).unwrap()];
        assert!((got - oracle).abs() < 1e-9 * oracle.abs());
    }

    #[test]
    fn poisson_single_mode() {
        let t = circle(16);
        let p = KernelParams::finite(1, 0.3, 1.0).unwrap();
        let pol = EvalPolicy::default();
        let m1 = multiplier(&p, 1.0, &pol).unwrap().value;
        // sin x = (e^{ix} − e^{−ix})/(2i)
        let mut f = SpectralField::zeros(t.clone());
        f.coeffs_mut()[t.position_of(&[1]).unwrap()] = Complex64::new(0.0, -0.5);
        f.coeffs_mut()[t.position_of(&[-1]).unwrap()] = Complex64::new(0.0, 0.5);
        let u = solve_poisson(&f, &p, &pol).unwrap();
        assert!((u.coeff(&[1]) - Complex64::new(0.0, -0.5 / m1)).norm() < 1e-15);
        let local = KernelParams::finite(1, 0.3, 3.0).unwrap();
        let u = solve_poisson(&f, &local, &pol).unwrap();
        assert!((u.coeff(&[1]) - Complex64::new(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn nonzero_mean_is_rejected() {
        let t = circle(8);
        let f = SpectralField::single_mode(t, &[0], Complex64::new(1.0, 0.0)).unwrap();
        let p = KernelParams::finite(1, 0.3, 1.0).unwrap();
        assert!(matches!(solve_poisson(&f, &p, &EvalPolicy::default()), Err(Error::Compatibility { .. })));
    }

    #[test]
    fn sobolev_norm_examples() {
        let t = TorusSpec::cube(2, 2.0 * PI, 8).unwrap();
        assert_eq!(sobolev_norm(&SpectralField::zeros(t.clone()), 1.0), 0.0);
        let u = SpectralField::single_mode(t.clone(), &[1, 0], Complex64::new(1.0, 0.0)).unwrap();
        assert!((sobolev_norm(&u, 1.0) - 2.0_f64.sqrt()).abs() < 1e-15);
        let mut v = SpectralField::zeros(t);
        v.coeffs_mut().iter_mut().enumerate().for_each(|(i, c)| *c = Complex64::new(i as f64, 1.0));
        let l2 = v.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        assert!((sobolev_norm(&v, 0.0) - l2).abs() < 1e-12 * l2);
    }
}
