use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos approximation with g = 607/128 and 15 coefficients (Godfrey).
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Largest argument for which Γ(x) is finite in f64.
pub const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

fn lanczos_sum(z: f64) -> f64 {
    let mut acc = LANCZOS_COEFFS[0];
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + k as f64);
    }
    acc
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// sin(πx) with exact zeros at the integers and no loss of accuracy for
/// large |x|.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        (PI * (-1.0 - r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// cos(πx), exact zero at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// The gamma function Γ(x) for real x.
///
/// Lanczos approximation for x ≥ 1/2, reflection formula below.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Overflow(x));
    }
    if x >= 0.5 {
        let z = x - 1.0;
        let t = z + LANCZOS_G + 0.5;
        // split the power so t^(z+1/2) does not overflow before e^-t is applied
        let half = t.powf(0.5 * (z + 0.5));
        Ok((2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_sum(z))
    } else {
        let s = sin_pi(x);
        let one_minus = 1.0 - x;
        if one_minus <= GAMMA_MAX_ARG {
            let g = gamma(one_minus)?;
            let v = PI / (s * g);
            if v.is_infinite() {
                return Err(Error::Overflow(x));
            }
            Ok(v)
        } else {
            // Γ(1-x) overflows; the result itself is tiny
            let (lg, _) = ln_gamma_abs(one_minus)?;
            let mag = (PI.ln() - s.abs().ln() - lg).exp();
            Ok(mag.copysign(s))
        }
    }
}

/// ln|Γ(x)| together with the sign of Γ(x).
pub fn ln_gamma_abs(x: f64) -> Result<(f64, f64)> {
    if x.is_nan() {
        return Err(Error::Domain("ln_gamma of NaN".into()));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x >= 0.5 {
        let z = x - 1.0;
        let t = z + LANCZOS_G + 0.5;
        Ok((LN_SQRT_2PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln(), 1.0))
    } else {
        let s = sin_pi(x);
        let (lg, _) = ln_gamma_abs(1.0 - x)?;
        Ok((PI.ln() - s.abs().ln() - lg, s.signum()))
    }
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(ln_gamma_abs(x)?.0)
}

/// 1/Γ(x), which is entire: zero at the nonpositive integers.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    match gamma(x) {
        Ok(g) => 1.0 / g,
        Err(_) => match ln_gamma_abs(x) {
            Ok((lg, sign)) => sign * (-lg).exp(),
            Err(_) => f64::NAN,
        },
    }
}

/// Rising factorial (a)_k = a(a+1)…(a+k-1).
pub fn pochhammer(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a + j as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn small_integers_and_half_integers() {
        assert!(rel(gamma(1.0).unwrap(), 1.0) < 1e-15);
        assert!(rel(gamma(5.0).unwrap(), 24.0) < 1e-14);
        assert!(rel(gamma(1.5).unwrap(), PI.sqrt() / 2.0) < 1e-15);
        assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-15);
    }

    #[test]
    fn reference_values() {
        // mpmath at 60 digits, see python/reference_values.py
        assert!(rel(gamma(6.3).unwrap(), 201.813_275_184_747_44) < 1e-13);
        assert!(rel(gamma(-2.5).unwrap(), -0.945_308_720_482_941_9) < 1e-13);
        assert!(rel(gamma(0.1).unwrap(), 9.513_507_698_668_731) < 1e-13);
        assert!(rel(gamma(170.5).unwrap(), 5.562_092_414_559_999_6e305) < 1e-13);
        assert!(rel(gamma(-150.3).unwrap(), -1.509_759_804_775_041e-263) < 1e-12);
        assert!(rel(ln_gamma(1000.5).unwrap(), 5_908.674_175_848_677) < 1e-14);
    }

    #[test]
    fn poles_and_overflow() {
        assert_eq!(gamma(0.0), Err(Error::Pole(0.0)));
        assert_eq!(gamma(-3.0), Err(Error::Pole(-3.0)));
        assert!(matches!(gamma(200.0), Err(Error::Overflow(_))));
        assert_eq!(rgamma(-4.0), 0.0);
    }

    #[test]
    fn sign_of_gamma_on_negative_axis() {
        let (_, s) = ln_gamma_abs(-0.5).unwrap();
        assert_eq!(s, -1.0);
        let (_, s) = ln_gamma_abs(-1.5).unwrap();
        assert_eq!(s, 1.0);
    }

    #[test]
    fn sin_pi_is_exact_at_integers() {
        for k in -50..50 {
            assert_eq!(sin_pi(k as f64), 0.0);
        }
        assert!((sin_pi(1e6 + 0.25) - (PI / 4.0).sin()).abs() < 1e-15);
    }
}
