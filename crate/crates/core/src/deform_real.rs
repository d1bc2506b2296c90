//! Deformed real-analytic forms, the Gaussian hyperbolic-distance kernel
//! (DGH) as an independent oracle, and small-α heat-flow checks.
//!
//! A term a e^{−2πλδ₁ + 2πipδ₂} becomes
//! `prefactor · a e^{−(S−1)/(2α) + 2πipδ₂}` with
//! `S = √(1 + 8πλαδ₁ + (4πpαδ₁)²)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::deform_holo::{admissible_domain, DeformParams, Normalization, Window};
use crate::error::{Error, Result};
use crate::maass::laplacian_fd;
use crate::numkit::{trapezoid_line, SumAccumulator};
use crate::spectra::{
    eta_power, eval_real, hermitian_square, sum_series, EvalResult, HoloSeed, ModulusPoint, PhaseTable, RealSeed, SeriesOptions,
    SeriesTerm,
};

/// Which prefactor multiplies each deformed term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RealVariant {
    /// `(1+S)^{1−k}/S`, carried over from the holomorphic case.
    #[default]
    Weighted,
    /// no prefactor; weight 0 only.
    Invariant,
    /// `[((1+S)/2)² + (2παδ₁p)²]^{1−k/2}/S`. Reduces to 1/S at k = 2,
    /// where it keeps |δ|^k covariance exactly.
    Residue,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealTermDeformation {
    pub s: f64,
    pub prefactor: f64,
    /// −(S−1)/(2α), evaluated without cancellation
    pub exponent: f64,
}

impl RealTermDeformation {
    pub fn new(lambda: f64, p: i64, weight: f64, alpha: f64, d1: f64, variant: RealVariant) -> Result<Self> {
        let q = 4.0 * PI * p as f64 * d1;
        let arg = 1.0 + 8.0 * PI * lambda * alpha * d1 + (q * alpha).powi(2);
        if !(arg > 0.0) {
            return Err(Error::BranchCut { argument: Complex64::new(arg, 0.0) });
        }
        let s = arg.sqrt();
        let exponent = -(8.0 * PI * lambda * d1 + q * q * alpha) / (2.0 * (1.0 + s));
        let prefactor = match variant {
            RealVariant::Weighted => (1.0 + s).powf(1.0 - weight) / s,
            RealVariant::Invariant => 1.0,
            RealVariant::Residue => {
                let r = 0.5 * (1.0 + s);
                (r * r + (0.5 * q * alpha).powi(2)).powf(1.0 - 0.5 * weight) / s
            }
        };
        Ok(Self { s, prefactor, exponent })
    }

    pub fn value(&self) -> f64 {
        self.prefactor * self.exponent.exp()
    }
}

/// Admissible δ₁, the same rule as in the holomorphic case.
pub fn real_window(seed: &RealSeed, alpha: f64) -> Result<Window> {
    admissible_domain(seed.delta(), alpha)
}

/// Σ a · prefactor · e^{−(S−1)/(2α) + 2πipδ₂}. Unit normalization divides
/// the weighted variant by 2^{1−k}; the other variants equal 1 at S = 1.
pub fn deform_eval_real(
    seed: &RealSeed,
    params: &DeformParams,
    delta: ModulusPoint,
    variant: RealVariant,
    opts: &SeriesOptions,
) -> Result<EvalResult> {
    let k = seed.weight();
    if variant == RealVariant::Invariant && k != 0.0 {
        return Err(Error::InvalidArgument(format!("the invariant variant needs weight 0, got {k}")));
    }
    let alpha = params.alpha.get();
    let d1 = delta.re();
    real_window(seed, alpha)?.check(d1)?;
    let phases = PhaseTable::new(delta.im(), seed.max_spin());
    let shells = seed.shells();
    let mut r = sum_series(
        |j| {
            let Some(sh) = shells.get(j) else { return Ok(None) };
            let mut acc = Complex64::new(0.0, 0.0);
            for &(p, a) in &sh.spins {
                let t = RealTermDeformation::new(sh.lambda, p, k, alpha, d1, variant)?;
                acc += a * t.value() * phases.get(p);
            }
            // p = 0 decays slowest within a shell
            let lead = RealTermDeformation::new(sh.lambda, 0, k, alpha, d1, variant)?;
            Ok(Some(SeriesTerm { value: acc, log_decay: lead.exponent }))
        },
        opts,
    )?;
    if variant == RealVariant::Weighted && params.normalization == Normalization::Unit {
        let scale = 2f64.powf(1.0 - k);
        r.value /= scale;
        r.tail_estimate /= scale;
    }
    Ok(r)
}

/// Relative residuals (S, T): |F(1/δ) − |δ|^k F(δ)|/|F(δ)| and |F(δ+i) − F(δ)|/|F(δ)|.
pub fn st_residuals(
    seed: &RealSeed,
    alpha: f64,
    delta: ModulusPoint,
    variant: RealVariant,
    tol: f64,
) -> Result<(f64, f64)> {
    let params = DeformParams::unit(alpha)?;
    let opts = SeriesOptions::new(tol);
    let f = deform_eval_real(seed, &params, delta, variant, &opts)?.value;
    let fs = deform_eval_real(seed, &params, delta.s_image(), variant, &opts)?.value;
    let ft = deform_eval_real(seed, &params, delta.t_image(), variant, &opts)?.value;
    let w = delta.as_complex().norm().powf(seed.weight());
    Ok(((fs - w * f).norm() / f.norm(), (ft - f).norm() / f.norm()))
}

/// |η^k|², a Hermitian seed of weight k with all exponent pairs up to
/// `lambda_max`.
pub fn synthetic_hermitian_seed(k: u32, lambda_max: f64) -> Result<RealSeed> {
    let eta = eta_power(k, lambda_max.ceil() as usize + 2)?;
    // keep only what the table covers, as a finished list
    let mut terms = Vec::new();
    while let Ok(Some(t)) = eta.term(terms.len()) {
        terms.push(t);
    }
    let base = HoloSeed::from_terms(eta.name(), eta.weight(), terms, true, false)?;
    hermitian_square(&base, lambda_max)
}

/// Moves δ into |δ| ≥ 1, |δ₂| ≤ 1/2 by δ → δ ± i and δ → 1/δ.
pub fn reduce_modulus(mut delta: ModulusPoint) -> ModulusPoint {
    for _ in 0..256 {
        let shift = delta.im().round();
        if shift != 0.0 {
            delta = ModulusPoint::new(delta.re(), delta.im() - shift).expect("shift keeps Re delta");
        }
        if delta.as_complex().norm_sqr() < 1.0 - 1e-15 {
            delta = delta.s_image();
        } else {
            break;
        }
    }
    delta
}

/// Evaluates a weight-0 invariant seed after reducing δ, so that points
/// deep in the cusp at small δ₁ need no more terms than points near δ = 1.
pub fn invariant_real_evaluator(seed: &RealSeed, tol: f64) -> Result<impl Fn(ModulusPoint) -> Result<Complex64> + '_> {
    if seed.weight() != 0.0 {
        return Err(Error::InvalidArgument("reduction needs a weight-0 seed".into()));
    }
    let opts = SeriesOptions::new(tol);
    Ok(move |d: ModulusPoint| Ok(eval_real(seed, reduce_modulus(d), &opts)?.value))
}

/// −|δ−δ′|²/(4αδ₁δ₁′)
pub fn dgh_exponent(delta: Complex64, delta_p: Complex64, alpha: f64) -> f64 {
    -(delta - delta_p).norm_sqr() / (4.0 * alpha * delta.re * delta_p.re)
}

/// Grid for the two-dimensional kernel quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DghQuad {
    /// trapezoid nodes per direction (odd, so the half grid nests)
    pub nodes: usize,
    /// half-width in standard deviations of the Gaussian
    pub width: f64,
    pub tol: f64,
}

impl Default for DghQuad {
    fn default() -> Self {
        Self { nodes: 97, width: 8.0, tol: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DghValue {
    pub value: Complex64,
    pub error: f64,
    /// the same rule applied to F ≡ 1
    pub normalization: f64,
}

/// F₂^α(δ) = (4πα)^{−1} ∫ e^{−|δ−δ′|²/(4αδ₁δ₁′)} F(δ′) d²δ′/δ₁′².
///
/// With δ₁′ = δ₁eˣ and δ₂′ = δ₂ + 2δ₁e^{x/2}√α·v the measure becomes
/// (2π√α)^{−1} e^{−x/2} e^{−sinh²(x/2)/α} e^{−v²} dx dv, integrated by a
/// tensor trapezoid rule over |v|, sinh²(x/2)/α ≤ width²/2. The error
/// estimate is the change from the half grid plus the boundary weight.
pub fn dgh_kernel_oracle<F>(f: F, alpha: f64, delta: ModulusPoint, quad: &DghQuad) -> Result<DghValue>
where
    F: Fn(ModulusPoint) -> Result<Complex64>,
{
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument(format!("kernel needs alpha > 0, got {alpha}")));
    }
    if quad.nodes < 9 || quad.nodes % 2 == 0 {
        return Err(Error::InvalidArgument("kernel grid needs an odd node count >= 9".into()));
    }
    let (d1, d2) = (delta.re(), delta.im());
    let half = quad.width / 2f64.sqrt();
    let xmax = 2.0 * (half * alpha.sqrt()).asinh();
    let n = quad.nodes;
    let hx = 2.0 * xmax / (n - 1) as f64;
    let hv = 2.0 * half / (n - 1) as f64;
    let sa = alpha.sqrt();
    let mut fine = SumAccumulator::default();
    let mut coarse = SumAccumulator::default();
    let mut norm_fine = 0.0;
    let mut edge = 0.0f64;
    let mut peak = 0.0f64;
    for i in 0..n {
        let x = -xmax + i as f64 * hx;
        let sh = (0.5 * x).sinh();
        let wx = (-0.5 * x - sh * sh / alpha).exp();
        let scale = 2.0 * d1 * (0.5 * x).exp() * sa;
        let row_end = i == 0 || i == n - 1;
        for j in 0..n {
            let v = -half + j as f64 * hv;
            let w = wx * (-v * v).exp();
            let fv = f(ModulusPoint::new(d1 * x.exp(), d2 + scale * v)?)?;
            let term = w * fv;
            fine.add(term)?;
            if i % 2 == 0 && j % 2 == 0 {
                coarse.add(term)?;
            }
            norm_fine += w;
            peak = peak.max(term.norm());
            if row_end || j == 0 || j == n - 1 {
                edge = edge.max(term.norm());
            }
        }
    }
    let c = hx * hv / (2.0 * PI * sa);
    let value = c * fine.value();
    let value_half = 4.0 * c * coarse.value();
    let boundary = edge / peak.max(f64::MIN_POSITIVE);
    if boundary > quad.tol {
        return Err(Error::ToleranceUnreachable { terms: n * n, estimate: boundary, tol: quad.tol });
    }
    let error = (value - value_half).norm() + boundary * value.norm();
    Ok(DghValue { value, error, normalization: c * norm_fine })
}

/// The kernel's eigenvalue on δ₁^s: `(2π√α)^{−1} √π ∫ e^{(s−1/2)x} e^{−sinh²(x/2)/α} dx`,
/// equal to 1 − s(1−s)α + O(α²).
pub fn dgh_monomial_multiplier(s: Complex64, alpha: f64) -> Result<Complex64> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument(format!("kernel needs alpha > 0, got {alpha}")));
    }
    let f = |x: f64| {
        let sh = (0.5 * x).sinh();
        ((s - 0.5) * x - sh * sh / alpha).exp()
    };
    let q = trapezoid_line(f, 0.0, alpha.sqrt().min(0.5), 1e-14)?;
    Ok(q.value / (2.0 * (PI * alpha).sqrt()))
}

/// Small-α comparison of the kernel flow with −¼Δ_ℍ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeatFlowCheck {
    pub alpha: f64,
    /// (F^α − F)/α
    pub difference_quotient: Complex64,
    pub laplacian: Complex64,
    /// |(F^α − F)/α + ¼Δ_ℍF|
    pub residual: f64,
    /// (F^α − F)/(α Δ_ℍF); the flow ∂_αF = −¼Δ_ℍF would give −1/4
    pub measured_rate: Complex64,
    pub quadrature_error: f64,
}

pub fn heat_flow_residual<F>(f: F, alpha: f64, delta: ModulusPoint, h: f64, quad: &DghQuad) -> Result<HeatFlowCheck>
where
    F: Fn(ModulusPoint) -> Result<Complex64>,
{
    if !(alpha > 0.0 && alpha <= 0.05) {
        return Err(Error::InvalidArgument(format!("heat-flow check needs 0 < alpha <= 0.05, got {alpha}")));
    }
    let deformed = dgh_kernel_oracle(&f, alpha, delta, quad)?;
    let f0 = f(delta)?;
    let lap = laplacian_fd(&f, delta, h)?;
    let dq = (deformed.value - f0) / alpha;
    let residual = (dq + 0.25 * lap).norm();
    let measured_rate = if lap.norm() > 0.0 { dq / lap } else { Complex64::new(f64::NAN, 0.0) };
    Ok(HeatFlowCheck {
        alpha,
        difference_quotient: dq,
        laplacian: lap,
        residual,
        measured_rate,
        quadrature_error: deformed.error / alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform_holo::deform_eval;
    use crate::spectra::{ising_z, RealTerm, Term};

    fn pt(a: f64, b: f64) -> ModulusPoint {
        ModulusPoint::new(a, b).unwrap()
    }

    #[test]
    fn term_invariants() {
        let a = RealTermDeformation::new(1.3, 3, 1.0, 0.2, 0.7, RealVariant::Weighted).unwrap();
        let b = RealTermDeformation::new(1.3, -3, 1.0, 0.2, 0.7, RealVariant::Weighted).unwrap();
        assert_eq!(a, b);
        let z = RealTermDeformation::new(0.0, 0, 0.0, 0.2, 0.7, RealVariant::Residue).unwrap();
        assert_eq!((z.s, z.prefactor, z.exponent), (1.0, 1.0, 0.0));
        let exact = (1.0 + 8.0 * PI * 1.3 * 0.2 * 0.7 + (4.0 * PI * 3.0 * 0.2 * 0.7f64).powi(2)).sqrt();
        assert!((a.s - exact).abs() < 1e-14);
        assert!((a.exponent + (exact - 1.0) / 0.4).abs() < 1e-12);
    }

    #[test]
    fn spinless_reduces_to_holomorphic() {
        let terms = vec![
            RealTerm { lambda: 0.5, p: 0, a: Complex64::new(1.0, 0.0) },
            RealTerm { lambda: 1.5, p: 0, a: Complex64::new(-0.4, 0.0) },
            RealTerm { lambda: 2.5, p: 0, a: Complex64::new(2.0, 0.0) },
        ];
        let real = RealSeed::from_terms("spinless", 0.5, terms.clone()).unwrap();
        let holo = HoloSeed::from_terms(
            "spinless",
            0.5,
            terms.iter().map(|t| Term { lambda: t.lambda, a: t.a }).collect(),
            true,
            false,
        )
        .unwrap();
        let params = DeformParams::raw(0.13).unwrap();
        let opts = SeriesOptions::new(1e-16);
        for d in [pt(0.7, 0.3), pt(1.4, -2.0)] {
            let r = deform_eval_real(&real, &params, d, RealVariant::Weighted, &opts).unwrap().value;
            let h = deform_eval(&holo, &params, pt(d.re(), 0.0), &opts).unwrap().value;
            assert!((r - h).norm() < 1e-13 * h.norm());
        }
    }

    #[test]
    fn small_alpha_limit() {
        let seed = synthetic_hermitian_seed(1, 30.0).unwrap();
        let d = pt(0.9, 0.2);
        let opts = SeriesOptions::new(1e-15);
        let f0 = eval_real(&seed, d, &opts).unwrap().value;
        let raw = DeformParams::raw(1e-5).unwrap();
        let f = deform_eval_real(&seed, &raw, d, RealVariant::Weighted, &opts).unwrap().value;
        assert!((f - f0).norm() < 1e-3 * f0.norm());
    }

    #[test]
    fn ising_invariant_variant() {
        let z = ising_z(64).unwrap();
        for alpha in [0.02, 0.05] {
            for d in [pt(1.0, 0.3), pt(0.9, 0.2), pt(0.6, -0.4), pt(1.7, 0.45)] {
                let (s, t) = st_residuals(&z, alpha, d, RealVariant::Invariant, 1e-15).unwrap();
                assert!(s < 1e-8 && t < 1e-10, "{alpha} {d:?}: {s} {t}");
            }
        }
    }

    #[test]
    fn residue_variant_weight_two() {
        let seed = synthetic_hermitian_seed(2, 60.0).unwrap();
        let (s, t) = st_residuals(&seed, 0.05, pt(0.9, 0.2), RealVariant::Residue, 1e-15).unwrap();
        assert!(s < 1e-10, "{s}");
        assert!(t < 1e-12);
    }

    #[test]
    fn reality() {
        let z = ising_z(32).unwrap();
        let params = DeformParams::unit(0.05).unwrap();
        for i in 0..10 {
            let d = pt(0.6 + 0.1 * i as f64, -0.5 + 0.11 * i as f64);
            let v = deform_eval_real(&z, &params, d, RealVariant::Invariant, &SeriesOptions::new(1e-14)).unwrap().value;
            assert!(v.im.abs() < 1e-12 * v.norm());
        }
    }

    #[test]
    fn invariant_needs_weight_zero() {
        let seed = synthetic_hermitian_seed(1, 10.0).unwrap();
        let params = DeformParams::unit(0.05).unwrap();
        let r = deform_eval_real(&seed, &params, pt(1.0, 0.0), RealVariant::Invariant, &SeriesOptions::new(1e-12));
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn reduction() {
        let d = reduce_modulus(pt(0.05, 3.3));
        assert!(d.as_complex().norm() >= 1.0 - 1e-12 && d.im().abs() <= 0.5);
    }

    #[test]
    fn kernel_exponent_symmetry() {
        let (a, b) = (Complex64::new(2.0, 0.4), Complex64::new(0.8, -0.2));
        let e = dgh_exponent(a, b, 0.1);
        let es = dgh_exponent(1.0 / a, 1.0 / b, 0.1);
        assert!((e - es).abs() < 1e-12 * e.abs());
    }

    #[test]
    fn kernel_normalization() {
        let v = dgh_kernel_oracle(|_| Ok(Complex64::new(1.0, 0.0)), 0.1, pt(1.0, 0.0), &DghQuad::default()).unwrap();
        assert!((v.value.re - 1.0).abs() < 2e-3);
        assert!((v.normalization - 1.0).abs() < 1e-10);
    }

    #[test]
    fn kernel_matches_ising_series() {
        let z = ising_z(64).unwrap();
        let f = invariant_real_evaluator(&z, 1e-15).unwrap();
        let o = dgh_kernel_oracle(&f, 0.05, pt(1.0, 0.0), &DghQuad::default()).unwrap();
        let params = DeformParams::unit(0.05).unwrap();
        let s = deform_eval_real(&z, &params, pt(1.0, 0.0), RealVariant::Invariant, &SeriesOptions::new(1e-15))
            .unwrap()
            .value;
        assert!((o.value - s).norm() < 1e-4 * s.norm(), "{} vs {s}", o.value);
    }

    #[test]
    fn monomial_multiplier() {
        let s = Complex64::new(2.0, 0.0);
        for alpha in [0.01, 0.02] {
            let m = dgh_monomial_multiplier(s, alpha).unwrap();
            let d = (m - (1.0 - s * (1.0 - s) * alpha)).norm();
            assert!(d < 5.0 * alpha * alpha, "{alpha}: {m}");
        }
        let f = |d: ModulusPoint| Ok(Complex64::new(d.re().powi(2), 0.0));
        let o = dgh_kernel_oracle(f, 0.02, pt(1.0, 0.0), &DghQuad::default()).unwrap();
        let m = dgh_monomial_multiplier(s, 0.02).unwrap();
        assert!((o.value - m).norm() < 1e-8);
    }

    #[test]
    fn constant_has_no_flow() {
        let c = heat_flow_residual(|_| Ok(Complex64::new(1.0, 0.0)), 0.02, pt(1.0, 0.0), 1e-3, &DghQuad::default())
            .unwrap();
        assert!(c.residual < 1e-6);
    }
}
