//! Lattice Eisenstein series, the invariant Laplacian by finite differences,
//! the multiplicative flow of Laplacian eigenfunctions, and the Gaussian
//! deformation of the holomorphic Eisenstein series.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numkit::{gauss_hermite, principal_powf, SumAccumulator};
use crate::spectra::{EvalResult, ModulusPoint};

/// Square truncation |m|, |n| ≤ M of a lattice sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeCutoff {
    pub m: u32,
}

impl LatticeCutoff {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("lattice cutoff must be positive".into()));
        }
        Ok(Self { m })
    }

    /// Bound on Σ Q(m,n)^{−σ} outside the square, Q = |m + inδ|².
    /// The square contains the disk Q < M²·μ with μ the smaller
    /// eigenvalue of Q, so the integral over the complement of that disk
    /// bounds the omitted part: (π/δ₁) R^{2−2σ}/(σ−1).
    pub fn tail(&self, delta: ModulusPoint, sigma: f64) -> f64 {
        let (d1, d2) = (delta.re(), delta.im());
        // Q(m, n) = (m − nδ₂)² + n²δ₁²
        let (a, b, c) = (1.0, -d2, d1 * d1 + d2 * d2);
        let mu = 0.5 * (a + c) - (0.25 * (a - c) * (a - c) + b * b).sqrt();
        let r2 = (self.m as f64).powi(2) * mu;
        PI / d1 * r2.powf(1.0 - sigma) / (sigma - 1.0)
    }
}

fn lattice_points(m: u32) -> impl Iterator<Item = (i64, i64)> {
    let m = m as i64;
    (-m..=m).flat_map(move |a| (-m..=m).map(move |b| (a, b))).filter(|&p| p != (0, 0))
}

/// E_s(δ) = Σ' δ₁^s / |m + inδ|^{2s} over the square cutoff, Re s > 1.
/// The square is mapped to itself by (m, n) → (n, −m), so the truncated
/// sum is exactly invariant under δ → 1/δ.
pub fn eisenstein_real(s: Complex64, delta: ModulusPoint, cutoff: LatticeCutoff) -> Result<EvalResult> {
    if s.re <= 1.0 {
        return Err(Error::Divergent { s, reason: "lattice sum needs Re s > 1".into() });
    }
    let (d1, d2) = (delta.re(), delta.im());
    let mut acc = SumAccumulator::default();
    let mut count = 0;
    for (m, n) in lattice_points(cutoff.m) {
        let (m, n) = (m as f64, n as f64);
        let q = (m - n * d2).powi(2) + (n * d1).powi(2);
        acc.add((s * (d1.ln() - q.ln())).exp())?;
        count += 1;
    }
    let tail = d1.powf(s.re) * cutoff.tail(delta, s.re);
    Ok(EvalResult { value: acc.value(), tail_estimate: tail, terms_used: count })
}

/// Δ_ℍF = −δ₁²(∂²_{δ₁} + ∂²_{δ₂})F from fourth-order central differences
/// (five points per axis, error O(h⁴)).
pub fn laplacian_fd<F>(f: F, delta: ModulusPoint, h: f64) -> Result<Complex64>
where
    F: Fn(ModulusPoint) -> Result<Complex64>,
{
    let (d1, d2) = (delta.re(), delta.im());
    if !(h > 0.0) || d1 - 2.0 * h <= 0.0 {
        return Err(Error::InvalidArgument(format!("step {h} leaves the half-plane at Re delta = {d1}")));
    }
    let at = |x: f64, y: f64| f(ModulusPoint::new(x, y)?);
    let f0 = at(d1, d2)?;
    let second = |fp2: Complex64, fp1: Complex64, fm1: Complex64, fm2: Complex64| {
        (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h)
    };
    let dxx = second(at(d1 + 2.0 * h, d2)?, at(d1 + h, d2)?, at(d1 - h, d2)?, at(d1 - 2.0 * h, d2)?);
    let dyy = second(at(d1, d2 + 2.0 * h)?, at(d1, d2 + h)?, at(d1, d2 - h)?, at(d1, d2 - 2.0 * h)?);
    Ok(-d1 * d1 * (dxx + dyy))
}

/// Multiplicative transport e^{−Λα/4} of a Laplacian eigenfunction with
/// eigenvalue Λ = s(1−s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlowFactor {
    pub lambda: Complex64,
    pub alpha: f64,
    pub factor: Complex64,
}

impl FlowFactor {
    pub fn new(s: Complex64, alpha: f64) -> Self {
        let lambda = s * (1.0 - s);
        Self { lambda, alpha, factor: (-lambda * alpha / 4.0).exp() }
    }

    /// Flow by α then by `other.alpha`; exponents add.
    pub fn then(&self, other: &FlowFactor) -> Result<FlowFactor> {
        if self.lambda != other.lambda {
            return Err(Error::InvalidArgument("flow factors for different eigenvalues".into()));
        }
        let alpha = self.alpha + other.alpha;
        Ok(Self { lambda: self.lambda, alpha, factor: (-self.lambda * alpha / 4.0).exp() })
    }
}

pub fn maass_flow(value: Complex64, s: Complex64, alpha: f64) -> Complex64 {
    FlowFactor::new(s, alpha).factor * value
}

/// Gauss–Hermite nodes for the per-point integrals.
pub const HOLO_EISENSTEIN_ORDER: usize = 64;

/// E_k^α(δ) = Σ' (4πα)^{−1/2} ∫ e^{−ℓ²/4α} (ℓ c + m + inδ)^{−k} dℓ with
/// c = (−imnδ)^{1/2} (principal branch), for even k ≥ 4. Points on the
/// axes are not deformed. With ℓ = 2√α t each integral becomes a
/// Gauss–Hermite sum.
pub fn eisenstein_holo_deformed(k: u32, alpha: f64, delta: ModulusPoint, cutoff: LatticeCutoff) -> Result<EvalResult> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::InvalidArgument(format!("weight {k} must be even and at least 4")));
    }
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!("alpha = {alpha} must be >= 0")));
    }
    let rule = gauss_hermite(HOLO_EISENSTEIN_ORDER)?;
    let mut acc = SumAccumulator::default();
    let mut count = 0;
    for (m, n) in lattice_points(cutoff.m) {
        acc.add(lattice_term(k, alpha, delta, m, n, &rule)?)?;
        count += 1;
    }
    let tail = cutoff.tail(delta, k as f64 / 2.0);
    Ok(EvalResult { value: acc.value(), tail_estimate: tail, terms_used: count })
}

/// One lattice point's contribution to E_k^α.
pub fn holo_eisenstein_term(k: u32, alpha: f64, delta: ModulusPoint, m: i64, n: i64) -> Result<Complex64> {
    lattice_term(k, alpha, delta, m, n, &gauss_hermite(HOLO_EISENSTEIN_ORDER)?)
}

fn lattice_term(k: u32, alpha: f64, delta: ModulusPoint, m: i64, n: i64, rule: &(Vec<f64>, Vec<f64>)) -> Result<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    let kk = -(k as i32);
    let z = m as f64 + i * n as f64 * delta.as_complex();
    if m == 0 || n == 0 || alpha == 0.0 {
        return Ok(z.powi(kk));
    }
    let c = principal_powf(-i * (m * n) as f64 * delta.as_complex(), 0.5)?;
    // distance from 0 to the line z + ℓc, ℓ real
    let dist = (z * c.conj()).im.abs() / c.norm();
    if dist < 1e-8 * z.norm() {
        return Err(Error::NearSingular { m, n });
    }
    let step = 2.0 * alpha.sqrt() * c;
    let mut v = Complex64::new(0.0, 0.0);
    for (t, w) in rule.0.iter().zip(&rule.1) {
        v += *w * (*t * step + z).powi(kk);
    }
    Ok(v / PI.sqrt())
}

/// Relative defects of E_k^α under δ → 1/δ, compared with (−1)^{k/2}δ^k E_k^α(δ),
/// and under δ → δ + i.
pub fn holo_eisenstein_residuals(k: u32, alpha: f64, delta: ModulusPoint, cutoff: LatticeCutoff) -> Result<(f64, f64)> {
    let e = eisenstein_holo_deformed(k, alpha, delta, cutoff)?.value;
    let es = eisenstein_holo_deformed(k, alpha, delta.s_image(), cutoff)?.value;
    let et = eisenstein_holo_deformed(k, alpha, delta.t_image(), cutoff)?.value;
    let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let want = sign * delta.as_complex().powi(k as i32) * e;
    Ok(((es - want).norm() / want.norm(), (et - e).norm() / e.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: f64, b: f64) -> ModulusPoint {
        ModulusPoint::new(a, b).unwrap()
    }

    #[test]
    fn flow_factor_values() {
        let f = FlowFactor::new(Complex64::new(2.0, 0.0), 0.4);
        assert!((f.factor.re - 0.2f64.exp()).abs() < 1e-15);
        assert!((f.factor.re - 1.221_402_8).abs() < 1e-7);
        assert_eq!(FlowFactor::new(Complex64::new(2.0, 0.0), 0.0).factor, Complex64::new(1.0, 0.0));
        let c = FlowFactor::new(Complex64::new(0.5, 0.0), 1.0);
        assert!((c.factor.re - (-1.0f64 / 16.0).exp()).abs() < 1e-15);
        let t = FlowFactor::new(Complex64::new(0.5, 3.0), 0.7);
        assert!(t.factor.norm() < 1.0);
    }

    #[test]
    fn flow_composes() {
        let s = Complex64::new(0.5, 2.0);
        let a = FlowFactor::new(s, 0.3);
        let b = FlowFactor::new(s, 0.45);
        let ab = a.then(&b).unwrap();
        assert!((ab.factor - FlowFactor::new(s, 0.75).factor).norm() < 1e-14);
        assert!((a.factor * b.factor - ab.factor).norm() < 1e-14);
    }

    #[test]
    fn monomial_laplacian() {
        let f = |d: ModulusPoint| Ok(Complex64::new(d.re().powi(2), 0.0));
        let l = laplacian_fd(f, pt(1.0, 0.0), 1e-3).unwrap();
        assert!((l.re + 2.0).abs() < 1e-8);
        let one = laplacian_fd(|_| Ok(Complex64::new(1.0, 0.0)), pt(1.0, 0.3), 1e-3).unwrap();
        assert_eq!(one, Complex64::new(0.0, 0.0));
        assert!(laplacian_fd(f, pt(0.001, 0.0), 1e-3).is_err());
    }

    #[test]
    fn eisenstein_invariance_and_eigen() {
        let cut = LatticeCutoff::new(60).unwrap();
        let s = Complex64::new(2.0, 0.0);
        let d = pt(1.1, 0.2);
        let e = eisenstein_real(s, d, cut).unwrap();
        let es = eisenstein_real(s, d.s_image(), cut).unwrap();
        let et = eisenstein_real(s, d.t_image(), cut).unwrap();
        assert!((es.value - e.value).norm() < 2.0 * e.tail_estimate);
        assert!((et.value - e.value).norm() < 2.0 * e.tail_estimate);
        for s in [2.0, 3.0] {
            let s = Complex64::new(s, 0.0);
            for d in [pt(1.1, 0.2), pt(0.9, -0.35)] {
                let f = |x: ModulusPoint| Ok(eisenstein_real(s, x, LatticeCutoff { m: 20 })?.value);
                let lap = laplacian_fd(f, d, 1e-3).unwrap();
                let v = f(d).unwrap();
                assert!((lap - s * (1.0 - s) * v).norm() < 1e-5 * v.norm());
            }
        }
    }

    #[test]
    fn eisenstein_cutoff_consistency() {
        let s = Complex64::new(2.0, 0.0);
        let a = eisenstein_real(s, pt(1.0, 0.0), LatticeCutoff { m: 40 }).unwrap();
        let b = eisenstein_real(s, pt(1.0, 0.0), LatticeCutoff { m: 80 }).unwrap();
        assert!((a.value - b.value).norm() < a.tail_estimate + b.tail_estimate);
        assert!(b.tail_estimate < a.tail_estimate);
        assert!(eisenstein_real(Complex64::new(1.0, 0.0), pt(1.0, 0.0), LatticeCutoff { m: 4 }).is_err());
    }

    #[test]
    fn holo_eisenstein_axes_and_limit() {
        let d = pt(1.2, 0.0);
        let cut = LatticeCutoff { m: 12 };
        let e0 = eisenstein_holo_deformed(4, 0.0, d, cut).unwrap().value;
        let small = eisenstein_holo_deformed(4, 1e-6, d, cut).unwrap().value;
        assert!((small - e0).norm() < 1e-4 * e0.norm());
        for (m, n) in [(3, 0), (-2, 0), (0, 5), (0, -1)] {
            let z = m as f64 + Complex64::new(0.0, n as f64) * 1.2;
            assert_eq!(holo_eisenstein_term(4, 0.3, d, m, n).unwrap(), z.powi(-4));
        }
        let off = holo_eisenstein_term(4, 0.3, d, 2, 1).unwrap();
        assert!((off - Complex64::new(2.0, 1.2).powi(-4)).norm() > 1e-6);
        assert!(eisenstein_holo_deformed(3, 0.1, d, cut).is_err());
    }

    #[test]
    fn holo_eisenstein_breaks_t_only() {
        let (s, t) = holo_eisenstein_residuals(4, 0.1, pt(1.2, 0.0), LatticeCutoff { m: 40 }).unwrap();
        assert!(s < 1e-6, "{s}");
        assert!(t > 1e-3, "{t}");
        let (s0, t0) = holo_eisenstein_residuals(4, 0.0, pt(1.2, 0.0), LatticeCutoff { m: 40 }).unwrap();
        assert!(s0 < 1e-12);
        assert!(t0 < 1e-3);
    }
}
