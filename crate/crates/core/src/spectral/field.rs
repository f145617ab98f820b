use num_complex::Complex64;

use super::torus::TorusSpec;
use crate::error::{Error, Result};

/// Real samples on the uniform grid of a torus, row-major with axis 0
/// slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    torus: TorusSpec,
    samples: Vec<f64>,
}

impl GridField {
    pub fn new(torus: TorusSpec, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != torus.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} samples for a grid of {} points",
                samples.len(),
                torus.len()
            )));
        }
        Ok(Self { torus, samples })
    }

    /// Samples f at every grid point.
    pub fn from_fn(torus: TorusSpec, f: impl Fn(&[f64]) -> f64) -> Self {
        let samples = (0..torus.len()).map(|pos| f(&torus.point_at(pos))).collect();
        Self { torus, samples }
    }

    pub fn torus(&self) -> &TorusSpec {
        &self.torus
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    /// Arithmetic mean of the samples.
    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    /// The field minus its mean.
    pub fn mean_removed(&self) -> Self {
        let m = self.mean();
        Self { torus: self.torus.clone(), samples: self.samples.iter().map(|v| v - m).collect() }
    }
}

/// Fourier coefficients û_k of u(x) = Σ û_k e^{iν_k·x} over the stored modes
/// of a torus.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    torus: TorusSpec,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn new(torus: TorusSpec, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != torus.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for {} modes",
                coeffs.len(),
                torus.len()
            )));
        }
        Ok(Self { torus, coeffs })
    }

    pub fn zeros(torus: TorusSpec) -> Self {
        let coeffs = vec![Complex64::new(0.0, 0.0); torus.len()];
        Self { torus, coeffs }
    }

    /// A single mode e^{iν_k·x} with coefficient `value`.
    pub fn single_mode(torus: TorusSpec, k: &[i64], value: Complex64) -> Result<Self> {
        let pos = torus
            .position_of(k)
            .ok_or_else(|| Error::ShapeMismatch(format!("mode {k:?} is not stored on this grid")))?;
        let mut f = Self::zeros(torus);
        f.coeffs[pos] = value;
        Ok(f)
    }

    pub fn torus(&self) -> &TorusSpec {
        &self.torus
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Coefficient of mode k, zero when k is not stored.
    pub fn coeff(&self, k: &[i64]) -> Complex64 {
        self.torus.position_of(k).map_or(Complex64::new(0.0, 0.0), |p| self.coeffs[p])
    }

    /// Coefficient of the constant mode.
    pub fn mean(&self) -> Complex64 {
        self.coeff(&vec![0; self.torus.n()])
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn sub(&self, other: &SpectralField) -> Result<SpectralField> {
        self.torus.check_same(&other.torus)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { torus: self.torus.clone(), coeffs })
    }

    /// True when û_{−k} = conj(û_k) for every k whose mirror is stored, to
    /// within `tol`·max|û|.
    pub fn is_conjugate_symmetric(&self, tol: f64) -> bool {
        let scale = tol * self.max_abs();
        (0..self.coeffs.len()).all(|pos| {
            let k: Vec<i64> = self.torus.mode_at(pos).iter().map(|v| -v).collect();
            match self.torus.position_of(&k) {
                Some(mirror) => (self.coeffs[mirror] - self.coeffs[pos].conj()).norm() <= scale,
                None => true,
            }
        })
    }
}
