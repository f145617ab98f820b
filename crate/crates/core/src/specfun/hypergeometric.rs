use serde::{Deserialize, Serialize};

use super::summation::CompensatedSum;
use crate::error::{Error, Result};

/// Tolerances, truncation limits and regime thresholds for series
/// evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPolicy {
    /// Relative accuracy target; also the reliability threshold on the
    /// reported error estimate.
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
    /// Largest allowed ratio of the biggest term to the final sum.
    pub cancellation_guard: f64,
    /// Series argument |z| above which multiplier evaluation switches to the
    /// large-argument expansion.
    pub large_arg_threshold: f64,
    /// Acceptable relative error estimate for a large-argument expansion
    /// before the multiplier falls back to quadrature.
    pub asymptotic_rel_tol: f64,
}

impl Default for EvalPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 0.0,
            max_terms: 10_000,
            cancellation_guard: 1e12,
            large_arg_threshold: 30.0,
            asymptotic_rel_tol: 1e-8,
        }
    }
}

impl EvalPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::Parameter(format!("rel_tol must be > 0, got {}", self.rel_tol)));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::Parameter(format!("abs_tol must be >= 0, got {}", self.abs_tol)));
        }
        if self.max_terms < 1 {
            return Err(Error::Parameter("max_terms must be >= 1".into()));
        }
        if !(self.cancellation_guard >= 1.0) {
            return Err(Error::Parameter(format!(
                "cancellation_guard must be >= 1, got {}",
                self.cancellation_guard
            )));
        }
        if !(self.large_arg_threshold >= 0.0) {
            return Err(Error::Parameter("large_arg_threshold must be >= 0".into()));
        }
        if !(self.asymptotic_rel_tol > 0.0) {
            return Err(Error::Parameter("asymptotic_rel_tol must be > 0".into()));
        }
        Ok(())
    }
}

/// A truncated series value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: f64,
    pub est_error: f64,
    pub terms_used: usize,
    /// False when cancellation exceeded the policy guard or the error
    /// estimate exceeds rel_tol·|value| + abs_tol.
    pub reliable: bool,
}

fn nonpositive_integer(x: f64) -> Option<u64> {
    (x <= 0.0 && x == x.floor() && x > -1e15).then(|| (-x) as u64)
}

/// Generalized hypergeometric series pFq(a; b; z) summed term by term.
///
/// Terms are generated by their ratio and accumulated with compensated
/// summation. Summation stops once two consecutive terms are no larger than
/// rel_tol·|sum| + abs_tol and still shrinking.
pub fn hyp_pfq(a: &[f64], b: &[f64], z: f64, policy: &EvalPolicy) -> Result<SeriesValue> {
    policy.validate()?;
    if !z.is_finite() || a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(Error::Domain("hyp_pfq requires finite parameters and argument".into()));
    }
    // a nonpositive-integer numerator parameter terminates the series
    let terminate_at = a.iter().filter_map(|&v| nonpositive_integer(v)).min();
    for &bj in b {
        if let Some(m) = nonpositive_integer(bj) {
            if terminate_at.is_none_or(|t| t > m) {
                return Err(Error::Parameter(format!(
                    "denominator parameter {bj} is a nonpositive integer not cancelled by a numerator parameter"
                )));
            }
        }
    }
    if a.len() > b.len() + 1 && terminate_at.is_none() && z != 0.0 {
        return Err(Error::Parameter(format!(
            "{}F{} series diverges for z != 0",
            a.len(),
            b.len()
        )));
    }
    if z == 0.0 || terminate_at == Some(0) {
        return Ok(SeriesValue { value: 1.0, est_error: 0.0, terms_used: 1, reliable: true });
    }

    let ops = (a.len() + b.len() + 2) as f64;
    let eps = f64::EPSILON;
    let mut sum = CompensatedSum::new();
    sum.add(1.0);
    let mut term = 1.0_f64;
    let mut max_term = 1.0_f64;
    let mut roundoff = 0.0_f64;
    let mut small_run = 0;
    let mut last_ratio = 0.0_f64;
    let mut k = 0usize;
    loop {
        if k + 1 >= policy.max_terms {
            return Err(Error::NonConvergence { terms: policy.max_terms });
        }
        let kf = k as f64;
        let mut ratio = z / (kf + 1.0);
        for &ai in a {
            ratio *= ai + kf;
        }
        for &bj in b {
            ratio /= bj + kf;
        }
        let prev = term.abs();
        term *= ratio;
        k += 1;
        if term == 0.0 {
            break;
        }
        sum.add(term);
        max_term = max_term.max(term.abs());
        roundoff += term.abs() * ((k as f64 + 1.0) * ops).sqrt();
        last_ratio = ratio.abs();
        let threshold = policy.rel_tol * sum.value().abs() + policy.abs_tol;
        if term.abs() <= threshold && term.abs() < prev {
            small_run += 1;
            if small_run >= 2 {
                break;
            }
        } else {
            small_run = 0;
        }
    }
    let value = sum.value();
    let tail = if term == 0.0 {
        0.0
    } else if last_ratio < 1.0 {
        // ratios keep shrinking for p ≤ q, so the geometric bound is safe
        term.abs() * last_ratio / (1.0 - last_ratio)
    } else {
        term.abs()
    };
    let est_error = tail + eps * roundoff + eps * value.abs();
    let reliable = max_term <= policy.cancellation_guard * value.abs()
        && est_error <= policy.rel_tol * value.abs() + policy.abs_tol;
    Ok(SeriesValue { value, est_error, terms_used: k + 1, reliable })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_argument_is_one() {
        let v = hyp_pfq(&[1.0, 0.3], &[2.0, 1.5, 1.3], 0.0, &EvalPolicy::default()).unwrap();
        assert_eq!(v.value, 1.0);
        assert_eq!(v.terms_used, 1);
    }

    #[test]
    fn zero_numerator_terminates_immediately() {
        for z in [-1e6, -3.0, 0.5, 40.0] {
            let v = hyp_pfq(&[1.0, 0.0], &[2.0, 2.5, 1.0], z, &EvalPolicy::default()).unwrap();
            assert_eq!(v.value, 1.0);
            assert_eq!(v.terms_used, 1);
            assert!(v.reliable);
        }
    }

    #[test]
    fn reference_values() {
        // term-by-term mpmath summation at 60 digits
        let p = EvalPolicy::default();
        let cases: [(&[f64], &[f64], f64, f64); 3] = [
            (&[1.0, 1.0], &[2.0, 2.0, 2.0], -4.0, 0.623_618_537_090_904_8),
            (&[1.0, 0.25], &[2.0, 1.5, 1.25], -30.0, 0.500_048_853_924_490_03),
            (&[1.0], &[2.0, 2.0], -25.0, 0.049_837_430_578_053_93),
        ];
        for (a, b, z, want) in cases {
            let v = hyp_pfq(a, b, z, &p).unwrap();
            assert!(v.reliable, "{v:?}");
            assert!(((v.value - want) / want).abs() < 1e-10, "{v:?} vs {want}");
            assert!((v.value - want).abs() <= v.est_error.max(1e-16));
        }
    }

    #[test]
    fn elementary_closed_forms() {
        let p = EvalPolicy { rel_tol: 1e-15, ..EvalPolicy::default() };
        // 0F0(;;z) = e^z, 1F0(a;;z) = (1-z)^-a
        let v = hyp_pfq(&[], &[], -2.0, &p).unwrap();
        assert!((v.value - (-2.0_f64).exp()).abs() < 1e-15);
        let v = hyp_pfq(&[0.5], &[], 0.3, &p).unwrap();
        assert!((v.value - 0.7_f64.powf(-0.5)).abs() < 1e-14);
    }

    #[test]
    fn uncancelled_nonpositive_denominator_is_rejected() {
        let p = EvalPolicy::default();
        assert!(matches!(hyp_pfq(&[1.0], &[-2.0], 1.0, &p), Err(Error::Parameter(_))));
        // numerator -1 terminates before the zero denominator at k = 3
        let v = hyp_pfq(&[-1.0], &[-2.0], 1.0, &p).unwrap();
        assert!((v.value - 1.5).abs() < 1e-15);
    }

    #[test]
    fn large_negative_argument_is_flagged() {
        let v = hyp_pfq(&[1.0], &[2.0, 1.5], -2500.0, &EvalPolicy::default()).unwrap();
        assert!(!v.reliable);
    }

    #[test]
    fn term_cap_reports_non_convergence() {
        let p = EvalPolicy { max_terms: 5, ..EvalPolicy::default() };
        assert_eq!(
            hyp_pfq(&[1.0], &[2.0, 2.0], -25.0, &p),
            Err(Error::NonConvergence { terms: 5 })
        );
    }
}
