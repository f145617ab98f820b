use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Periodic box ∏[0, ℓ_i) with N_i grid points per axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorusSpec {
    lengths: Vec<f64>,
    grid_sizes: Vec<usize>,
}

impl TorusSpec {
    pub fn new(lengths: Vec<f64>, grid_sizes: Vec<usize>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::Invalid("torus needs at least one axis".into()));
        }
        if lengths.len() != grid_sizes.len() {
            return Err(Error::Invalid(format!(
                "{} lengths but {} grid sizes",
                lengths.len(),
                grid_sizes.len()
            )));
        }
        if let Some(l) = lengths.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
            return Err(Error::Invalid(format!("torus lengths must be finite and > 0, got {l}")));
        }
        if let Some(m) = grid_sizes.iter().find(|m| **m < 2) {
            return Err(Error::Invalid(format!("grid sizes must be >= 2, got {m}")));
        }
        Ok(Self { lengths, grid_sizes })
    }

    /// n-dimensional torus with the same length and grid size on every axis.
    pub fn cube(n: usize, length: f64, grid_size: usize) -> Result<Self> {
        Self::new(vec![length; n], vec![grid_size; n])
    }

    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn grid_sizes(&self) -> &[usize] {
        &self.grid_sizes
    }

    /// Total number of grid points, equal to the number of stored modes.
    pub fn len(&self) -> usize {
        self.grid_sizes.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Lowest stored mode index −⌊N/2⌋ on `axis`; the highest is ⌈N/2⌉−1.
    pub fn lowest_mode(&self, axis: usize) -> i64 {
        -((self.grid_sizes[axis] / 2) as i64)
    }

    /// Integer mode vector k at flat position `pos` of a coefficient array
    /// (row-major, axis 0 slowest, each axis in increasing k).
    pub fn mode_at(&self, mut pos: usize) -> Vec<i64> {
        let n = self.n();
        let mut k = vec![0; n];
        for axis in (0..n).rev() {
            let m = self.grid_sizes[axis];
            k[axis] = (pos % m) as i64 + self.lowest_mode(axis);
            pos /= m;
        }
        k
    }

    /// Flat position of mode k, if it is stored.
    pub fn position_of(&self, k: &[i64]) -> Option<usize> {
        if k.len() != self.n() {
            return None;
        }
        let mut pos = 0;
        for (axis, &ki) in k.iter().enumerate() {
            let m = self.grid_sizes[axis] as i64;
            let j = ki - self.lowest_mode(axis);
            if !(0..m).contains(&j) {
                return None;
            }
            pos = pos * m as usize + j as usize;
        }
        Some(pos)
    }

    /// Grid point x_j = (j_i ℓ_i / N_i) at flat sample position `pos`.
    pub fn point_at(&self, mut pos: usize) -> Vec<f64> {
        let n = self.n();
        let mut x = vec![0.0; n];
        for axis in (0..n).rev() {
            let m = self.grid_sizes[axis];
            x[axis] = (pos % m) as f64 * self.lengths[axis] / m as f64;
            pos /= m;
        }
        x
    }

    /// Frequency ν_k = (2πk_i/ℓ_i) of an integer mode vector.
    pub fn frequency_of(&self, k: &[i64]) -> Vec<f64> {
        k.iter().zip(&self.lengths).map(|(&ki, l)| 2.0 * PI * ki as f64 / l).collect()
    }

    pub(crate) fn check_same(&self, other: &TorusSpec) -> Result<()> {
        if self != other {
            return Err(Error::ShapeMismatch(format!(
                "torus {:?} x {:?} does not match {:?} x {:?}",
                self.lengths, self.grid_sizes, other.lengths, other.grid_sizes
            )));
        }
        Ok(())
    }
}

/// Frequencies ν_k of every stored mode, in coefficient order.
pub fn frequencies(torus: &TorusSpec) -> Vec<Vec<f64>> {
    (0..torus.len()).map(|pos| torus.frequency_of(&torus.mode_at(pos))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_frequencies() {
        let t = TorusSpec::cube(1, 2.0 * PI, 4).unwrap();
        let f: Vec<f64> = frequencies(&t).into_iter().map(|v| v[0]).collect();
        let want = [-2.0, -1.0, 0.0, 1.0];
        for (a, b) in f.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        let t = TorusSpec::cube(1, 1.0, 2).unwrap();
        let f = frequencies(&t);
        assert!((f[0][0] + 2.0 * PI).abs() < 1e-15);
        assert_eq!(f[1][0], 0.0);
    }

    #[test]
    fn odd_grid_is_symmetric() {
        let t = TorusSpec::cube(1, 1.0, 5).unwrap();
        assert_eq!(t.mode_at(0), vec![-2]);
        assert_eq!(t.mode_at(4), vec![2]);
    }

    #[test]
    fn positions_round_trip() {
        let t = TorusSpec::new(vec![1.0, 2.0, 3.0], vec![4, 5, 2]).unwrap();
        for pos in 0..t.len() {
            assert_eq!(t.position_of(&t.mode_at(pos)), Some(pos));
        }
        assert_eq!(t.position_of(&[0, 0, 0]).map(|p| t.mode_at(p)), Some(vec![0, 0, 0]));
        assert_eq!(t.position_of(&[2, 0, 0]), None);
    }

    #[test]
    fn validation() {
        assert!(TorusSpec::new(vec![1.0], vec![1]).is_err());
        assert!(TorusSpec::new(vec![0.0], vec![4]).is_err());
        assert!(TorusSpec::new(vec![1.0, 1.0], vec![4]).is_err());
    }
}
