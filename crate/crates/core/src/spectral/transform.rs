use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{FftDirection, FftPlanner};

use super::field::{GridField, SpectralField};
use super::torus::TorusSpec;

/// In-place unnormalized FFT along every axis of a row-major array.
fn fft_nd(torus: &TorusSpec, data: &mut [Complex64], direction: FftDirection) {
    let sizes = torus.grid_sizes();
    let mut planner = FftPlanner::new();
    for (axis, &m) in sizes.iter().enumerate() {
        let fft = planner.plan_fft(m, direction);
        let stride: usize = sizes[axis + 1..].iter().product();
        let block = m * stride;
        if stride == 1 {
            data.par_chunks_mut(m).for_each(|line| fft.process(line));
            continue;
        }
        data.par_chunks_mut(block).for_each(|chunk| {
            let mut line = vec![Complex64::new(0.0, 0.0); m];
            for inner in 0..stride {
                for (j, v) in line.iter_mut().enumerate() {
                    *v = chunk[j * stride + inner];
                }
                fft.process(&mut line);
                for (j, v) in line.iter().enumerate() {
                    chunk[j * stride + inner] = *v;
                }
            }
        });
    }
}

/// Reorders between FFT order (k = 0, 1, …, −1) and the centered layout
/// (k = −⌊N/2⌋, …, ⌈N/2⌉−1) on every axis.
fn reorder(torus: &TorusSpec, data: &[Complex64], to_centered: bool) -> Vec<Complex64> {
    let sizes = torus.grid_sizes();
    let n = sizes.len();
    let mut out = vec![Complex64::new(0.0, 0.0); data.len()];
    let mut idx = vec![0usize; n];
    for (src, value) in data.iter().enumerate() {
        let mut rem = src;
        for axis in (0..n).rev() {
            idx[axis] = rem % sizes[axis];
            rem /= sizes[axis];
        }
        let mut dst = 0;
        for axis in 0..n {
            let m = sizes[axis];
            let shift = if to_centered { m / 2 } else { m - m / 2 };
            dst = dst * m + (idx[axis] + shift) % m;
        }
        out[dst] = *value;
    }
    out
}

/// Fourier coefficients û_k = (1/N) Σ_j g(x_j) e^{−iν_k·x_j}, so a constant
/// grid c maps to û_0 = c.
pub fn forward_transform(g: &GridField) -> SpectralField {
    let torus = g.torus().clone();
    let mut data: Vec<Complex64> = g.samples().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_nd(&torus, &mut data, FftDirection::Forward);
    let scale = 1.0 / torus.len() as f64;
    data.iter_mut().for_each(|c| *c *= scale);
    let coeffs = reorder(&torus, &data, true);
    SpectralField::new(torus, coeffs).expect("transform preserves the mode count")
}

/// Grid samples of Re Σ_k û_k e^{iν_k·x}.
pub fn inverse_transform(u: &SpectralField) -> GridField {
    let torus = u.torus().clone();
    let mut data = reorder(&torus, u.coeffs(), false);
    fft_nd(&torus, &mut data, FftDirection::Inverse);
    let samples = data.iter().map(|c| c.re).collect();
    GridField::new(torus, samples).expect("transform preserves the sample count")
}
