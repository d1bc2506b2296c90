//! Confluent hypergeometric functions ₁F₁ (Kummer M) and Tricomi U.

use num_complex::Complex64;

use super::gamma::{gamma_complex, recip_gamma};
use super::power::principal_power;
use super::sum::{Precision, SumAccumulator};
use crate::error::{Error, Result};

pub const DEFAULT_ARGUMENT_CAP: f64 = 60.0;

#[derive(Debug, Clone, Copy)]
pub struct HyperOptions {
    /// Largest admissible |z|.
    pub cap: f64,
    pub precision: Precision,
    pub max_terms: usize,
}

impl Default for HyperOptions {
    fn default() -> Self {
        Self { cap: DEFAULT_ARGUMENT_CAP, precision: Precision::Binary64, max_terms: 20_000 }
    }
}

fn nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn series(a: Complex64, b: Complex64, z: Complex64, opts: &HyperOptions) -> Result<Complex64> {
    let mut acc = SumAccumulator::new(opts.precision);
    let mut term = Complex64::new(1.0, 0.0);
    acc.add(term)?;
    for n in 0..opts.max_terms {
        let nf = n as f64;
        let ratio = (a + nf) / (b + nf) * z / (nf + 1.0);
        term *= ratio;
        acc.add(term)?;
        if term.norm() <= 0.25 * f64::EPSILON * acc.value().norm().max(f64::MIN_POSITIVE)
            && ratio.norm() < 1.0
        {
            return Ok(acc.value());
        }
        if term == Complex64::new(0.0, 0.0) {
            return Ok(acc.value());
        }
    }
    Err(Error::ToleranceUnreachable { terms: opts.max_terms, estimate: term.norm(), tol: f64::EPSILON })
}

/// Kummer's function ₁F₁(a; b; z) with the default argument cap.
pub fn kummer_1f1(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    kummer_1f1_with(a, b, z, &HyperOptions::default())
}

/// ₁F₁ by its power series; for Re z < 0 the Kummer transformation
/// `M(a,b,z) = e^z M(b−a,b,−z)` keeps the terms of one sign.
pub fn kummer_1f1_with(a: Complex64, b: Complex64, z: Complex64, opts: &HyperOptions) -> Result<Complex64> {
    if nonpositive_integer(b) {
        return Err(Error::Pole { function: "1F1", at: b });
    }
    if z.norm() > opts.cap {
        return Err(Error::ArgumentCap { magnitude: z.norm(), cap: opts.cap });
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if z.re < 0.0 && !nonpositive_integer(a) {
        Ok(z.exp() * series(b - a, b, -z, opts)?)
    } else {
        series(a, b, z, opts)
    }
}

/// Tricomi's U(a, b, z) from the two-term connection formula
/// `U = Γ(1−b)/Γ(a−b+1) M(a,b,z) + Γ(b−1)/Γ(a) z^{1−b} M(a−b+1,2−b,z)`.
/// Integer `b` is a removable case of that formula and is rejected.
pub fn tricomi_u(a: Complex64, b: Complex64, z: Complex64, opts: &HyperOptions) -> Result<Complex64> {
    if b.im == 0.0 && (b.re - b.re.round()).abs() < 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "Tricomi U with integer b = {} needs the limiting form; use the quadrature route",
            b.re
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let m1 = kummer_1f1_with(a, b, z, opts)?;
    let m2 = kummer_1f1_with(a - b + 1.0, 2.0 - b, z, opts)?;
    let t1 = gamma_complex(one - b)? * recip_gamma(a - b + 1.0) * m1;
    let t2 = gamma_complex(b - 1.0)? * recip_gamma(a) * principal_power(z, one - b)? * m2;
    Ok(t1 + t2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_argument() {
        assert_eq!(kummer_1f1(c(0.3, 1.0), c(2.5, 0.0), c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn exponential_case() {
        let z = c(2.0, 1.0);
        let v = kummer_1f1(c(1.0, 0.0), c(1.0, 0.0), z).unwrap();
        assert!((v - z.exp()).norm() < 1e-12 * z.exp().norm());
    }

    #[test]
    fn elementary_case() {
        let v = kummer_1f1(c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!((v.re - 6.361_845_641_062_556).abs() < 1e-12);
    }

    #[test]
    fn negative_argument_uses_transformation() {
        let z = c(-30.0, 0.0);
        let v = kummer_1f1(c(1.0, 0.0), c(1.0, 0.0), z).unwrap();
        assert!((v.re - (-30f64).exp()).abs() < 1e-12 * (-30f64).exp());
    }

    #[test]
    fn cap_and_pole() {
        assert!(matches!(kummer_1f1(c(1.0, 0.0), c(2.0, 0.0), c(61.0, 0.0)), Err(Error::ArgumentCap { .. })));
        assert!(matches!(kummer_1f1(c(1.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn derivative_identity() {
        let (a, b, z) = (c(0.7, 0.2), c(1.9, -0.1), c(1.3, 0.4));
        let h = 1e-5;
        let d = (kummer_1f1(a, b, z + h).unwrap() - kummer_1f1(a, b, z - h).unwrap()) / (2.0 * h);
        let rhs = a / b * kummer_1f1(a + 1.0, b + 1.0, z).unwrap();
        assert!((d - rhs).norm() < 1e-6);
    }

    #[test]
    fn tricomi_elementary() {
        // U(a, a+1, z) = z^{-a}
        let opts = HyperOptions::default();
        let u = tricomi_u(c(0.6, 0.0), c(1.6, 0.0), c(2.5, 0.0), &opts).unwrap();
        assert!((u.re - 2.5f64.powf(-0.6)).abs() < 1e-12);
        assert!(tricomi_u(c(1.0, 0.0), c(3.0, 0.0), c(1.0, 0.0), &opts).is_err());
    }
}
