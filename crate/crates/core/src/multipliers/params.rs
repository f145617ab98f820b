use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance for rejecting β ∈ {n+4, n+6, …}.
pub const EXCLUDED_BETA_TOL: f64 = 1e-9;
/// Tolerance for recognising β = n+2, where the operator is the Laplacian.
pub const LOCAL_BETA_TOL: f64 = 1e-12;

/// Kernel exponent: a finite real or the limit β = −∞.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Beta {
    Finite(f64),
    NegInf,
}

impl Beta {
    pub fn finite(self) -> Option<f64> {
        match self {
            Beta::Finite(b) => Some(b),
            Beta::NegInf => None,
        }
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Beta::Finite(b) => write!(f, "{b}"),
            Beta::NegInf => f.write_str("-inf"),
        }
    }
}

/// Dimension n, horizon δ and kernel exponent β of the power-law kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelParams {
    n: usize,
    delta: f64,
    beta: Beta,
}

impl KernelParams {
    pub fn new(n: usize, delta: f64, beta: Beta) -> Result<Self> {
        if n < 1 {
            return Err(Error::Invalid("dimension n must be >= 1".into()));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::Invalid(format!("delta must be finite and > 0, got {delta}")));
        }
        if let Beta::Finite(b) = beta {
            if b.is_nan() {
                return Err(Error::Invalid("beta is NaN".into()));
            }
            if b == f64::INFINITY {
                return Err(Error::Invalid(
                    "beta = +inf has no limiting operator".into(),
                ));
            }
            if b == f64::NEG_INFINITY {
                return Self::new(n, delta, Beta::NegInf);
            }
            if let Some(offset) = excluded_offset(n, b) {
                return Err(Error::ExcludedBeta { n, beta: b, offset });
            }
        }
        Ok(Self { n, delta, beta })
    }

    /// Parameters with a finite kernel exponent.
    pub fn finite(n: usize, delta: f64, beta: f64) -> Result<Self> {
        Self::new(n, delta, Beta::Finite(beta))
    }

    /// Parameters of the β = −∞ limit operator.
    pub fn neg_inf(n: usize, delta: f64) -> Result<Self> {
        Self::new(n, delta, Beta::NegInf)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn beta(&self) -> Beta {
        self.beta
    }

    /// The same kernel with a different horizon.
    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        Self::new(self.n, delta, self.beta)
    }

    pub fn finite_beta(&self) -> Result<f64> {
        self.beta
            .finite()
            .ok_or_else(|| Error::Domain("operation requires a finite beta".into()))
    }

    /// True when β = n+2 within [`LOCAL_BETA_TOL`].
    pub fn is_local(&self) -> bool {
        matches!(self.beta, Beta::Finite(b) if (b - (self.n as f64 + 2.0)).abs() <= LOCAL_BETA_TOL)
    }

    /// Finite β with β < n+2, as required by the integral representations.
    pub fn integrable_beta(&self) -> Result<f64> {
        let b = self.finite_beta()?;
        if b >= self.n as f64 + 2.0 {
            return Err(Error::Domain(format!(
                "integral representation requires beta < n + 2 = {}, got {b}",
                self.n + 2
            )));
        }
        Ok(b)
    }

    /// Series parameters a = (n+2−β)/2 and b = (n+2)/2.
    pub(crate) fn series_ab(&self) -> Result<(f64, f64)> {
        let beta = self.finite_beta()?;
        let n = self.n as f64;
        Ok(((n + 2.0 - beta) / 2.0, (n + 2.0) / 2.0))
    }
}

/// If β lies within [`EXCLUDED_BETA_TOL`] of n+2j for some j ≥ 2, returns 2j.
pub fn excluded_offset(n: usize, beta: f64) -> Option<usize> {
    let d = beta - n as f64;
    if d < 4.0 - EXCLUDED_BETA_TOL {
        return None;
    }
    let j = (d / 2.0).round();
    (j >= 2.0 && (d - 2.0 * j).abs() <= EXCLUDED_BETA_TOL).then_some(2 * j as usize)
}
