use std::f64::consts::PI;

use super::gamma::{cos_pi, sin_pi};
use crate::error::{Error, Result};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// The digamma function ψ(x) = Γ'(x)/Γ(x).
///
/// Upward recurrence to x ≥ 10 followed by the asymptotic expansion;
/// negative arguments go through the reflection formula.
pub fn digamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("digamma of NaN".into()));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::Pole(x));
    }
    if x < 0.0 {
        // ψ(x) = ψ(1-x) - π cot(πx)
        return Ok(digamma(1.0 - x)? - PI * cos_pi(x) / sin_pi(x));
    }
    let mut x = x;
    let mut shift = 0.0;
    while x < 10.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // B_2k / (2k) for k = 7 down to 1, Horner in 1/x²
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0
                                    - inv2
                                        * (1.0 / 132.0
                                            - inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
    Ok(shift + x.ln() - 0.5 / x - series)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_values() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-15);
        let half = -EULER_GAMMA - 2.0 * std::f64::consts::LN_2;
        assert!((digamma(0.5).unwrap() - half).abs() < 1e-15);
    }

    #[test]
    fn reference_values() {
        // mpmath at 60 digits
        let cases = [
            (3.7, 1.167_153_539_361_511_4),
            (-2.3, 3.317_323_157_561_820_3),
            (0.01, -100.560_885_457_868_67),
        ];
        for (x, want) in cases {
            let got = digamma(x).unwrap();
            assert!(((got - want) / want).abs() < 1e-13, "psi({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn poles() {
        assert_eq!(digamma(0.0), Err(Error::Pole(0.0)));
        assert_eq!(digamma(-7.0), Err(Error::Pole(-7.0)));
    }
}
