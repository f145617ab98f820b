//! Python module `perilap`: multipliers, asymptotes and the periodic Poisson solver.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use perilap_core::multipliers::{self, Beta, KernelParams};
use perilap_core::specfun::{self, EvalPolicy};
use perilap_core::spectral::{self, GridField, TorusSpec};
use perilap_core::Error;

fn to_py(e: Error) -> PyErr {
    if e.is_validation() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

/// β = float('-inf') selects the limit operator.
fn params(n: usize, delta: f64, beta: f64) -> PyResult<KernelParams> {
    let beta = if beta == f64::NEG_INFINITY { Beta::NegInf } else { Beta::Finite(beta) };
    KernelParams::new(n, delta, beta).map_err(to_py)
}

fn policy(rel_tol: Option<f64>) -> PyResult<EvalPolicy> {
    let mut p = EvalPolicy::default();
    if let Some(t) = rel_tol {
        p.rel_tol = t;
    }
    p.validate().map_err(to_py)?;
    Ok(p)
}

/// m^{δ,β}(‖ν‖) as (value, method, est_error).
#[pyfunction]
#[pyo3(signature = (n, delta, beta, nu, rel_tol=None))]
fn multiplier(n: usize, delta: f64, beta: f64, nu: f64, rel_tol: Option<f64>) -> PyResult<(f64, String, f64)> {
    let r = multipliers::multiplier(&params(n, delta, beta)?, nu, &policy(rel_tol)?).map_err(to_py)?;
    Ok((r.value, r.method.to_string(), r.est_error))
}

/// m^{δ,β}(‖ν‖) for each entry of `nu`.
#[pyfunction]
#[pyo3(signature = (n, delta, beta, nu, rel_tol=None))]
fn multiplier_many(n: usize, delta: f64, beta: f64, nu: Vec<f64>, rel_tol: Option<f64>) -> PyResult<Vec<f64>> {
    let (p, pol) = (params(n, delta, beta)?, policy(rel_tol)?);
    nu.iter().map(|&v| multipliers::multiplier(&p, v, &pol).map(|r| r.value).map_err(to_py)).collect()
}

#[pyfunction]
fn multiplier_limit(n: usize, delta: f64, nu: f64) -> PyResult<f64> {
    multipliers::multiplier_limit_beta_neg_inf(n, delta, nu).map(|r| r.value).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (n, delta, beta, nu, tol=1e-10))]
fn multiplier_oracle(n: usize, delta: f64, beta: f64, nu: f64, tol: f64) -> PyResult<f64> {
    multipliers::multiplier_quadrature_oracle(&params(n, delta, beta)?, nu, tol).map_err(to_py)
}

#[pyfunction]
fn asymptotic_large_nu(n: usize, delta: f64, beta: f64, nu: f64) -> PyResult<f64> {
    if beta == f64::NEG_INFINITY {
        return multipliers::asymptotic_limit_large_nu(n, delta, nu).map_err(to_py);
    }
    multipliers::asymptotic_large_nu(&params(n, delta, beta)?, nu).map_err(to_py)
}

#[pyfunction]
fn asymptotic_small_nu(n: usize, delta: f64, beta: f64, nu: f64) -> PyResult<f64> {
    multipliers::asymptotic_small_nu(&params(n, delta, beta)?, nu).map_err(to_py)
}

#[pyfunction]
fn scaling_constant(n: usize, delta: f64, beta: f64) -> PyResult<f64> {
    multipliers::scaling_constant(&params(n, delta, beta)?).map_err(to_py)
}

/// Generalized hypergeometric series pFq(a; b; z) as (value, est_error).
#[pyfunction]
#[pyo3(signature = (a, b, z, rel_tol=None))]
fn hyp_pfq(a: Vec<f64>, b: Vec<f64>, z: f64, rel_tol: Option<f64>) -> PyResult<(f64, f64)> {
    let s = specfun::hyp_pfq(&a, &b, z, &policy(rel_tol)?).map_err(to_py)?;
    Ok((s.value, s.est_error))
}

fn torus(n: usize, lengths: Vec<f64>, grid_sizes: Vec<usize>) -> PyResult<TorusSpec> {
    let t = TorusSpec::new(lengths, grid_sizes).map_err(to_py)?;
    if t.n() != n {
        return Err(PyValueError::new_err(format!("torus has {} axes but n = {n}", t.n())));
    }
    Ok(t)
}

/// Eigenvalues m(‖ν_k‖) in row-major mode order, k_i from −⌊N_i/2⌋.
#[pyfunction]
fn eigenvalues(n: usize, delta: f64, beta: f64, lengths: Vec<f64>, grid_sizes: Vec<usize>) -> PyResult<Vec<f64>> {
    let t = torus(n, lengths, grid_sizes)?;
    spectral::eigenvalue_array(&t, &params(n, delta, beta)?, &EvalPolicy::default()).map_err(to_py)
}

/// Solves L^{δ,β}u = f for mean-zero grid samples f (row-major, axis 0 slowest).
#[pyfunction]
fn solve_poisson(
    n: usize,
    delta: f64,
    beta: f64,
    lengths: Vec<f64>,
    grid_sizes: Vec<usize>,
    samples: Vec<f64>,
) -> PyResult<Vec<f64>> {
    let t = torus(n, lengths, grid_sizes)?;
    let f = GridField::new(t, samples).map_err(to_py)?;
    let u = spectral::solve_poisson(&spectral::forward_transform(&f), &params(n, delta, beta)?, &EvalPolicy::default())
        .map_err(to_py)?;
    Ok(spectral::inverse_transform(&u).into_samples())
}

/// H^s norm of grid samples, from their Fourier coefficients.
#[pyfunction]
fn sobolev_norm(lengths: Vec<f64>, grid_sizes: Vec<usize>, samples: Vec<f64>, s: f64) -> PyResult<f64> {
    let t = TorusSpec::new(lengths, grid_sizes).map_err(to_py)?;
    let f = GridField::new(t, samples).map_err(to_py)?;
    Ok(spectral::sobolev_norm(&spectral::forward_transform(&f), s))
}

#[pymodule]
fn perilap(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(multiplier, m)?)?;
    m.add_function(wrap_pyfunction!(multiplier_many, m)?)?;
    m.add_function(wrap_pyfunction!(multiplier_limit, m)?)?;
    m.add_function(wrap_pyfunction!(multiplier_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_large_nu, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_small_nu, m)?)?;
    m.add_function(wrap_pyfunction!(scaling_constant, m)?)?;
    m.add_function(wrap_pyfunction!(hyp_pfq, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(solve_poisson, m)?)?;
    m.add_function(wrap_pyfunction!(sobolev_norm, m)?)?;
    Ok(())
}
