//! Compensated accumulation of complex terms.
//!
//! Two accumulators are provided: a Neumaier (improved Kahan) sum that
//! keeps one compensation word per component, and a double-double sum
//! that carries the running value as an unevaluated pair `hi + lo`.
//! The latter is selected with [`Precision::DoubleDouble`] on paths with
//! heavy cancellation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Accumulation mode for long sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Precision {
    #[default]
    Binary64,
    DoubleDouble,
}

/// Error-free transformation `a + b = s + e`.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// A real double-double number `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    pub fn new(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub fn add_f64(self, x: f64) -> Self {
        let (s, e) = two_sum(self.hi, x);
        let e = e + self.lo;
        let (hi, lo) = two_sum(s, e);
        Self { hi, lo }
    }

    pub fn add(self, other: Self) -> Self {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = two_sum(s, e);
        Self { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    #[inline]
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Clone, Copy)]
enum Engine {
    Neumaier(Neumaier, Neumaier),
    DoubleDouble(DoubleDouble, DoubleDouble),
}

/// Running compensated sum of complex terms.
///
/// Besides the value it tracks `sum |term|`, from which a rounding bound
/// for the result is derived.
#[derive(Debug, Clone, Copy)]
pub struct SumAccumulator {
    engine: Engine,
    abs_sum: f64,
    count: usize,
}

impl Default for SumAccumulator {
    fn default() -> Self {
        Self::new(Precision::Binary64)
    }
}

impl SumAccumulator {
    pub fn new(precision: Precision) -> Self {
        let engine = match precision {
            Precision::Binary64 => Engine::Neumaier(Neumaier::default(), Neumaier::default()),
            Precision::DoubleDouble => {
                Engine::DoubleDouble(DoubleDouble::default(), DoubleDouble::default())
            }
        };
        Self { engine, abs_sum: 0.0, count: 0 }
    }

    /// Adds a term; non-finite terms are rejected with their index.
    pub fn add(&mut self, z: Complex64) -> Result<()> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite { index: self.count });
        }
        match &mut self.engine {
            Engine::Neumaier(re, im) => {
                re.add(z.re);
                im.add(z.im);
            }
            Engine::DoubleDouble(re, im) => {
                *re = re.add_f64(z.re);
                *im = im.add_f64(z.im);
            }
        }
        self.abs_sum += z.norm();
        self.count += 1;
        Ok(())
    }

    pub fn value(&self) -> Complex64 {
        match &self.engine {
            Engine::Neumaier(re, im) => Complex64::new(re.value(), im.value()),
            Engine::DoubleDouble(re, im) => Complex64::new(re.to_f64(), im.to_f64()),
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn abs_sum(&self) -> f64 {
        self.abs_sum
    }

    /// Bound on the accumulated rounding error of [`value`](Self::value).
    ///
    /// Compensated summation is accurate to `2u|S| + O(n u^2) sum|x_i|`; the
    /// second term is kept with a factor 4 to cover the complex components.
    pub fn rounding_estimate(&self) -> f64 {
        let u = f64::EPSILON / 2.0;
        let n = self.count as f64;
        2.0 * u * self.value().norm() + 4.0 * n * u * u * self.abs_sum
    }
}

/// Sums a finite stream of complex terms, returning the value and a bound on
/// its rounding error.
pub fn compensated_sum<I>(terms: I) -> Result<(Complex64, f64)>
where
    I: IntoIterator<Item = Complex64>,
{
    compensated_sum_with(terms, Precision::Binary64)
}

pub fn compensated_sum_with<I>(terms: I, precision: Precision) -> Result<(Complex64, f64)>
where
    I: IntoIterator<Item = Complex64>,
{
    let mut acc = SumAccumulator::new(precision);
    for z in terms {
        acc.add(z)?;
    }
    Ok((acc.value(), acc.rounding_estimate()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_terms_are_not_lost() {
        let terms = std::iter::once(Complex64::new(1.0, 0.0))
            .chain(std::iter::repeat(Complex64::new(1e-16, 0.0)).take(10_000));
        let (v, est) = compensated_sum(terms).unwrap();
        assert!((v.re - (1.0 + 1e-12)).abs() < 1e-15);
        assert!(est < 1e-15);
    }

    #[test]
    fn empty_sum_is_zero() {
        let (v, est) = compensated_sum(std::iter::empty()).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
        assert_eq!(est, 0.0);
    }

    #[test]
    fn non_finite_term_reports_index() {
        let terms = vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(f64::NAN, 0.0)];
        match compensated_sum(terms) {
            Err(Error::NonFinite { index }) => assert_eq!(index, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn double_double_matches_neumaier_on_benign_input() {
        let terms: Vec<_> = (1..2000).map(|n| Complex64::new(1.0 / n as f64, -1.0 / (n * n) as f64)).collect();
        let (a, _) = compensated_sum_with(terms.clone(), Precision::Binary64).unwrap();
        let (b, _) = compensated_sum_with(terms, Precision::DoubleDouble).unwrap();
        assert!((a - b).norm() < 1e-15);
    }

    #[test]
    fn alternating_harmonic_million_terms() {
        // Reference: ln 2 minus the exact tail of the truncated series,
        // evaluated at 30 digits.
        const REFERENCE: f64 = 0.693_146_680_560_195_309_417;
        let terms = (1..=1_000_000u32).map(|n| {
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            Complex64::new(sign / n as f64, 0.0)
        });
        let (v, est) = compensated_sum(terms.clone()).unwrap();
        assert!((v.re - REFERENCE).abs() < 1e-12);
        assert!((v.re - REFERENCE).abs() <= est.max(1e-16));
        let (dd, _) = compensated_sum_with(terms, Precision::DoubleDouble).unwrap();
        assert!((dd.re - REFERENCE).abs() < 1e-15);
    }

    #[test]
    fn two_sum_is_error_free() {
        let (s, e) = two_sum(1.0, 1e-20);
        assert_eq!(s, 1.0);
        assert_eq!(e, 1e-20);
    }
}
