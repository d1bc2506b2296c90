//! wasm-bindgen exports for the static demo page in `www/`.
//!
//! Every function returns one value per sample; points where evaluation
//! fails (outside the admissible window, unknown seed) come back as NaN so
//! the page can leave gaps in the curve.

use num_complex::Complex64;
use wasm_bindgen::prelude::*;

use ttdeform::deform_holo::{deform_eval, DeformParams};
use ttdeform::deform_real::{deform_eval_real, RealVariant};
use ttdeform::mellin::{i_alpha, MultiplierRoute};
use ttdeform::spectra::{builtin_seed, ising_z, ModulusPoint, Seed, SeriesOptions};

const ISING_ORDER: usize = 48;

fn samples(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| lo + step * i as f64)
}

/// Re F^α(δ₁ + iδ₂) of a built-in holomorphic seed for δ₁ in [lo, hi].
#[wasm_bindgen]
pub fn deformed_curve(seed: &str, alpha: f64, d2: f64, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let Ok(Seed::Holo(s)) = builtin_seed(seed, ISING_ORDER) else {
        return vec![f64::NAN; n];
    };
    let Ok(params) = DeformParams::unit(alpha) else {
        return vec![f64::NAN; n];
    };
    let opts = SeriesOptions::new(1e-13);
    samples(lo, hi, n)
        .map(|d1| {
            ModulusPoint::new(d1, d2)
                .and_then(|d| deform_eval(&s, &params, d, &opts))
                .map_or(f64::NAN, |r| r.value.re)
        })
        .collect()
}

/// |I^α(k, σ + it)| for t in [lo, hi].
#[wasm_bindgen]
pub fn multiplier_curve(k: f64, sigma: f64, alpha: f64, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    samples(lo, hi, n)
        .map(|t| i_alpha(k, Complex64::new(sigma, t), alpha, MultiplierRoute::Auto).map_or(f64::NAN, |v| v.value.norm()))
        .collect()
}

/// Deformed Ising partition function at δ₁ in [lo, hi], fixed δ₂.
#[wasm_bindgen]
pub fn ising_curve(alpha: f64, d2: f64, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (Ok(z), Ok(params)) = (ising_z(ISING_ORDER), DeformParams::unit(alpha)) else {
        return vec![f64::NAN; n];
    };
    let opts = SeriesOptions::new(1e-12);
    samples(lo, hi, n)
        .map(|d1| {
            ModulusPoint::new(d1, d2)
                .and_then(|d| deform_eval_real(&z, &params, d, RealVariant::Invariant, &opts))
                .map_or(f64::NAN, |r| r.value.re)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_at_zero_alpha() {
        let v = deformed_curve("theta3", 0.0, 0.0, 1.0, 1.0, 1);
        assert!((v[0] - 1.086_434_811_213_31).abs() < 1e-12);
    }

    #[test]
    fn gaps_outside_window() {
        let v = deformed_curve("eta-inverse", 0.1, 0.0, 0.05, 1.0, 2);
        assert!(v[0].is_nan() && v[1].is_finite());
        assert!(deformed_curve("nosuch", 0.1, 0.0, 1.0, 2.0, 3).iter().all(|x| x.is_nan()));
    }

    #[test]
    fn multiplier_limit() {
        let v = multiplier_curve(0.5, 0.25, 0.0, -3.0, 3.0, 4);
        assert!(v.iter().all(|x| (x - 2f64.sqrt()).abs() < 1e-15));
    }

    #[test]
    fn ising_is_symmetric_in_d2() {
        let a = ising_curve(0.05, 0.2, 0.8, 1.2, 3);
        let b = ising_curve(0.05, -0.2, 0.8, 1.2, 3);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12 * x.abs());
        }
    }
}
