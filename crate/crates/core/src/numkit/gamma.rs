//! Complex Γ via the Lanczos approximation (g = 7, n = 9) with reflection.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const G: f64 = 7.0;
const COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

// Valid for Re z >= 1/2.
fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(COEF[0], 0.0);
    for (i, c) in COEF.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + G + 0.5;
    let ln = 0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln();
    ln.exp()
}

/// Γ(z) for complex `z`; poles at the non-positive integers are errors.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite { index: 0 });
    }
    if is_pole(z) {
        return Err(Error::Pole { function: "gamma", at: z });
    }
    if z.re < 0.5 {
        let s = (PI * z).sin();
        Ok(PI / (s * lanczos(1.0 - z)))
    } else {
        Ok(lanczos(z))
    }
}

/// 1/Γ(z), entire: zero at the poles of Γ.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if is_pole(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        (PI * z).sin() * lanczos(1.0 - z) / PI
    } else {
        1.0 / lanczos(z)
    }
}

pub fn gamma_real(x: f64) -> Result<f64> {
    gamma_complex(Complex64::new(x, 0.0)).map(|g| g.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_values() {
        assert!((gamma_real(1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma_real(0.5).unwrap() - PI.sqrt()).abs() < 1e-13);
        assert!((gamma_real(5.0).unwrap() - 24.0).abs() < 1e-12);
        assert!((gamma_real(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn reflection_self_check() {
        let z = c(0.3, 0.7);
        let v = gamma_complex(z).unwrap() * gamma_complex(1.0 - z).unwrap() * (PI * z).sin() / PI;
        assert!((v - 1.0).norm() < 1e-11);
    }

    #[test]
    fn poles_are_reported() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(gamma_complex(c(n, 0.0)), Err(Error::Pole { .. })));
            assert_eq!(recip_gamma(c(n, 0.0)), c(0.0, 0.0));
        }
    }

    #[test]
    fn large_argument_relative_accuracy() {
        // Γ(31) = 30!
        let f30 = 265_252_859_812_191_058_636_308_480_000_000f64;
        assert!((gamma_real(31.0).unwrap() / f30 - 1.0).abs() < 1e-12);
    }
}
