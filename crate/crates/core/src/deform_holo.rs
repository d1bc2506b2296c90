//! Deformed holomorphic series, the deformed-exponent map, deformed Jacobi
//! theta sums, the integral-kernel representation and Hagedorn scans.
//!
//! Each exponent λ of a weight-k seed is replaced by
//! `(1+S)^{1−k}/S · exp(−(S−1)/(2α))` with `S = √(1+8πλαδ)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numkit::{gauss_hermite, principal_powf, sqrt_off_cut, trapezoid_line, Precision};
use crate::spectra::{eval_holo, sum_series, EvalResult, HoloSeed, ModulusPoint, SeriesOptions, SeriesTerm, Term};

/// Whether the 2^{1−k} factor picked up by the deformation is divided out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    Raw,
    #[default]
    Unit,
}

/// Non-negative deformation strength.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(a: f64) -> Result<Self> {
        if !a.is_finite() || a < 0.0 {
            return Err(Error::InvalidArgument(format!("alpha = {a} must be finite and >= 0")));
        }
        Ok(Self(a))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;
    fn try_from(a: f64) -> Result<Self> {
        Self::new(a)
    }
}

impl From<Alpha> for f64 {
    fn from(a: Alpha) -> f64 {
        a.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformParams {
    pub alpha: Alpha,
    pub normalization: Normalization,
}

impl DeformParams {
    pub fn new(alpha: f64, normalization: Normalization) -> Result<Self> {
        Ok(Self { alpha: Alpha::new(alpha)?, normalization })
    }

    pub fn unit(alpha: f64) -> Result<Self> {
        Self::new(alpha, Normalization::Unit)
    }

    pub fn raw(alpha: f64) -> Result<Self> {
        Self::new(alpha, Normalization::Raw)
    }
}

/// Factors that replace e^{−2πλδ} for one exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermDeformation {
    pub s: Complex64,
    pub prefactor: Complex64,
    pub exponent_factor: Complex64,
    /// log |prefactor · exponent_factor|
    pub log_magnitude: f64,
}

impl TermDeformation {
    /// `S = √(1+8πλαδ)`; the exponent is evaluated as `−4πλδ/(1+S)`,
    /// which equals `−(S−1)/(2α)` without the cancellation at small α.
    pub fn new(lambda: f64, weight: f64, alpha: f64, delta: Complex64) -> Result<Self> {
        let arg = 1.0 + 8.0 * PI * lambda * alpha * delta;
        let s = sqrt_off_cut(arg)?;
        let prefactor = principal_powf(1.0 + s, 1.0 - weight)? / s;
        let exponent = -4.0 * PI * lambda * delta / (1.0 + s);
        Ok(Self {
            s,
            prefactor,
            exponent_factor: exponent.exp(),
            // from logs, so that an underflowed prefactor still orders the terms
            log_magnitude: exponent.re + (1.0 - weight) * (1.0 + s).norm().ln() - s.norm().ln(),
        })
    }

    pub fn value(&self) -> Complex64 {
        self.prefactor * self.exponent_factor
    }
}

/// The β-deformed number `x_β = (√(1+4βx) − 1)/(2β)`, computed as
/// `2x/(1 + √(1+4βx))` so that β → 0 needs no special case.
pub fn deform_exponent(x: Complex64, beta: Complex64) -> Result<Complex64> {
    let arg = 1.0 + 4.0 * beta * x;
    let root = sqrt_off_cut(arg)?;
    Ok(2.0 * x / (1.0 + root))
}

/// `|(βx_β)² + βx_β − βx|`
pub fn deformed_number_residual(x: Complex64, beta: Complex64, xb: Complex64) -> f64 {
    let y = beta * xb;
    (y * y + y - beta * x).norm()
}

/// Open interval of admissible Re δ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Window {
    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn check(&self, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutsideWindow { re: x, lo: self.lo, hi: self.hi })
        }
    }
}

/// Admissible Re δ for a seed with smallest exponent `delta`:
/// all of (0, ∞) when Δ ≥ 0, otherwise (8π|Δ|α, 1/(8π|Δ|α)).
pub fn admissible_domain(delta: f64, alpha: f64) -> Result<Window> {
    if delta >= 0.0 || alpha == 0.0 {
        return Ok(Window { lo: 0.0, hi: f64::INFINITY });
    }
    let product = 8.0 * PI * delta.abs() * alpha;
    if product >= 1.0 - 1e-12 {
        return Err(Error::EmptyWindow { product });
    }
    Ok(Window { lo: product, hi: 1.0 / product })
}

pub fn seed_window(seed: &HoloSeed, alpha: f64) -> Result<Window> {
    admissible_domain(seed.delta(), alpha)
}

/// Σ aⱼ (1+Sⱼ)^{1−k}/Sⱼ e^{−(Sⱼ−1)/(2α)}, divided by 2^{1−k} under unit
/// normalization.
pub fn deform_eval(
    seed: &HoloSeed,
    params: &DeformParams,
    delta: ModulusPoint,
    opts: &SeriesOptions,
) -> Result<EvalResult> {
    let alpha = params.alpha.get();
    seed_window(seed, alpha)?.check(delta.re())?;
    let k = seed.weight();
    let d = delta.as_complex();
    let mut r = sum_series(
        |j| {
            let Some(Term { lambda, a }) = seed.term(j)? else { return Ok(None) };
            let t = TermDeformation::new(lambda, k, alpha, d)?;
            Ok(Some(SeriesTerm { value: a * t.value(), log_decay: t.log_magnitude }))
        },
        opts,
    )?;
    if params.normalization == Normalization::Unit {
        let scale = 2f64.powf(1.0 - k);
        r.value /= scale;
        r.tail_estimate /= scale;
    }
    Ok(r)
}

/// Relative S-covariance defect |F^α(1/δ) − δ^k F^α(δ)| / |F^α(δ)|.
pub fn s_residual(seed: &HoloSeed, alpha: f64, delta: ModulusPoint, tol: f64) -> Result<f64> {
    let params = DeformParams::unit(alpha)?;
    let opts = SeriesOptions::new(tol);
    let f = deform_eval(seed, &params, delta, &opts)?.value;
    let fs = deform_eval(seed, &params, delta.s_image(), &opts)?.value;
    let w = principal_powf(delta.as_complex(), seed.weight())?;
    Ok((fs - w * f).norm() / f.norm().max(1e-300))
}

/// Deformed summand of the theta-type sums below:
/// `((1+S)/2)^w / S · e^{−(S−1)/(2α)}` with `S = √(1+4αE)`.
fn theta_kernel(e: Complex64, alpha: f64, weightexp: f64) -> Result<Complex64> {
    let s = sqrt_off_cut(1.0 + 4.0 * alpha * e)?;
    let pref = principal_powf(0.5 * (1.0 + s), weightexp)? / s;
    Ok(pref * (-2.0 * e / (1.0 + s)).exp())
}

fn symmetric_sum<F>(f: F, tol: f64, precision: Precision) -> Result<EvalResult>
where
    F: Fn(i64) -> Result<Complex64>,
{
    // pairs n = ±j summed together; terms are magnitude-ordered in j
    let opts = SeriesOptions { tol, max_terms: 10_000, precision };
    sum_series(
        |j| {
            let j = j as i64;
            let v = if j == 0 { f(0)? } else { f(j)? + f(-j)? };
            let m = v.norm().max(1e-300);
            Ok(Some(SeriesTerm { value: v, log_decay: m.ln() }))
        },
        &opts,
    )
}

/// Deformed Jacobi theta sum
/// `Σₙ ((1+Sₙ)/2)^w/Sₙ e^{−(Sₙ−1)/(2α)}`, `Sₙ = √(1+4πα(n²δ − 2inz√δ))`.
/// At z = 0 and w = 1/2 this is the unit-normalized deformed θ₃; as α → 0
/// it tends to `Σ e^{−πn²δ + 2πinz√δ}`.
pub fn deform_jacobi_theta(
    z: Complex64,
    alpha: f64,
    delta: ModulusPoint,
    weightexp: f64,
    tol: f64,
) -> Result<EvalResult> {
    Alpha::new(alpha)?;
    let d = delta.as_complex();
    let sd = d.sqrt();
    symmetric_sum(
        |n| {
            let nf = n as f64;
            let e = PI * (nf * nf * d - Complex64::new(0.0, 2.0) * nf * z * sd);
            theta_kernel(e, alpha, weightexp)
        },
        tol,
        Precision::Binary64,
    )
}

/// Inversion defect `|ϑ^α(z; δ) − δ^{−1/2} e^{−πz²} ϑ^α(iz; 1/δ)|` of
/// [`deform_jacobi_theta`] with w = 1/2. Vanishes as α → 0.
pub fn jacobi_residual(z: Complex64, alpha: f64, delta: ModulusPoint, tol: f64) -> Result<f64> {
    let lhs = deform_jacobi_theta(z, alpha, delta, 0.5, tol)?.value;
    let iz = Complex64::new(0.0, 1.0) * z;
    let d = delta.as_complex();
    let rhs = (-PI * z * z).exp() / d.sqrt() * deform_jacobi_theta(iz, alpha, delta.s_image(), 0.5, tol)?.value;
    Ok((lhs - rhs).norm())
}

/// Sum `Σₙ D(π(n√δ − iz)²)` in which the Gaussian shift sits inside the
/// deformation; D is the summand of [`deform_jacobi_theta`].
pub fn shifted_theta(z: Complex64, alpha: f64, delta: ModulusPoint, weightexp: f64, tol: f64) -> Result<EvalResult> {
    let sd = delta.as_complex().sqrt();
    let i = Complex64::new(0.0, 1.0);
    symmetric_sum(
        |n| {
            let u = n as f64 * sd - i * z;
            theta_kernel(PI * u * u, alpha, weightexp)
        },
        tol,
        Precision::Binary64,
    )
}

/// Defect of the inversion law
/// `Σₙ D(π(n√δ − iz)²) = δ^{−1/2} Σₘ D(πm²/δ) e^{2πmz/√δ}`,
/// which holds exactly for every α ≥ 0.
pub fn shifted_jacobi_residual(z: Complex64, alpha: f64, delta: ModulusPoint, tol: f64) -> Result<f64> {
    let lhs = shifted_theta(z, alpha, delta, 0.5, tol)?.value;
    let d = delta.as_complex();
    let sd = d.sqrt();
    let rhs = symmetric_sum(
        |m| {
            let mf = m as f64;
            Ok(theta_kernel(Complex64::new(PI * mf * mf, 0.0) / d, alpha, 0.5)? * (2.0 * PI * mf * z / sd).exp())
        },
        tol,
        Precision::Binary64,
    )?
    .value
        / sd;
    Ok((lhs - rhs).norm())
}

/// Kernel quadrature settings.
#[derive(Debug, Clone, Copy)]
pub struct KernelQuad {
    /// Gauss–Hermite order of the inner t-integral.
    pub hermite_order: usize,
    /// Target accuracy of the outer integral.
    pub tol: f64,
}

impl Default for KernelQuad {
    fn default() -> Self {
        Self { hermite_order: 120, tol: 1e-12 }
    }
}

/// `T(A) = ∫ (A − iαt)^{1−k} e^{−αt²} dt`, by Gauss–Hermite after t = u/√α.
fn inner_t_integral(a: f64, alpha: f64, weight: f64, nodes: &(Vec<f64>, Vec<f64>)) -> Result<Complex64> {
    let sa = alpha.sqrt();
    let mut acc = Complex64::new(0.0, 0.0);
    for (u, w) in nodes.0.iter().zip(&nodes.1) {
        let z = Complex64::new(a, -sa * u);
        acc += *w * principal_powf(z, 1.0 - weight)?;
    }
    Ok(acc / sa)
}

/// `K^α(δ,δ') = e^{−(δ'−δ)²/(4αδδ')} ∫ ((δ+δ')/(2√(δδ')) − iαt)^{1−k} e^{−αt²} dt`
/// for real positive δ, δ'.
pub fn kernel(alpha: f64, weight: f64, delta: f64, delta_p: f64, hermite_order: usize) -> Result<Complex64> {
    if !(delta > 0.0 && delta_p > 0.0 && alpha > 0.0) {
        return Err(Error::InvalidArgument("kernel needs positive real arguments and alpha > 0".into()));
    }
    let nodes = gauss_hermite(hermite_order)?;
    let a = (delta + delta_p) / (2.0 * (delta * delta_p).sqrt());
    let g = (-(delta_p - delta).powi(2) / (4.0 * alpha * delta * delta_p)).exp();
    Ok(g * inner_t_integral(a, alpha, weight, &nodes)?)
}

/// Uncalibrated kernel integral
/// `∫₀^∞ (δ'/δ)^{k/2} K^α(δ,δ') F⁰(δ') dδ'/δ'`, evaluated in x = ln(δ'/δ)
/// by a step-halving trapezoid rule. `seed_at` supplies F⁰ on (0, ∞).
pub fn kernel_integral<F>(weight: f64, alpha: f64, delta: f64, seed_at: F, quad: &KernelQuad) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument("the kernel representation needs alpha > 0".into()));
    }
    let nodes = gauss_hermite(quad.hermite_order)?;
    let failure = std::cell::RefCell::new(None);
    let f = |x: f64| -> Complex64 {
        let sh = (0.5 * x).sinh();
        let gauss = -sh * sh / alpha;
        if gauss < -745.0 {
            return Complex64::new(0.0, 0.0);
        }
        let eval = || -> Result<Complex64> {
            let t = inner_t_integral((0.5 * x).cosh(), alpha, weight, &nodes)?;
            Ok((0.5 * weight * x + gauss).exp() * t * seed_at(delta * x.exp())?)
        };
        match eval() {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let q = trapezoid_line(f, 0.0, 0.25, quad.tol)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(q.value)
}

/// Evaluates F⁰ of a covariant seed anywhere on (0, ∞), mapping δ < 1 to
/// 1/δ with the weight-k transformation so the series always converges fast.
pub fn covariant_seed_evaluator(seed: &HoloSeed, tol: f64) -> impl Fn(f64) -> Result<Complex64> + '_ {
    let opts = SeriesOptions::new(tol);
    move |d: f64| {
        if d >= 1.0 || !seed.is_covariant() {
            Ok(eval_holo(seed, ModulusPoint::real(d)?, &opts)?.value)
        } else {
            let v = eval_holo(seed, ModulusPoint::real(1.0 / d)?, &opts)?.value;
            Ok(v * d.powf(-seed.weight()))
        }
    }
}

/// Calibration of the kernel representation's overall constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelCalibration {
    pub alpha: f64,
    pub weight: f64,
    /// series / kernel integral for the one-term seed λ = 1, a = 1
    pub constant: f64,
    /// 2^{1−k}/(2π)
    pub expected: f64,
}

/// Fixes the constant relating [`kernel_integral`] to the raw deformed
/// series, using the single exponent λ = 1 at δ = 1.
pub fn calibrate_kernel(weight: f64, alpha: f64, quad: &KernelQuad) -> Result<KernelCalibration> {
    let one = HoloSeed::from_terms("unit-term", weight, vec![Term { lambda: 1.0, a: Complex64::new(1.0, 0.0) }], true, false)?;
    let series = deform_eval(&one, &DeformParams::raw(alpha)?, ModulusPoint::real(1.0)?, &SeriesOptions::new(1e-15))?.value;
    let integral = kernel_integral(weight, alpha, 1.0, |d| Ok(Complex64::new((-2.0 * PI * d).exp(), 0.0)), quad)?;
    let c = series / integral;
    Ok(KernelCalibration { alpha, weight, constant: c.re, expected: 2f64.powf(1.0 - weight) / (2.0 * PI) })
}

/// Kernel-representation value of the raw deformed seed at real δ:
/// the calibrated constant times [`kernel_integral`].
pub fn kernel_oracle(
    seed: &HoloSeed,
    alpha: f64,
    delta: f64,
    calibration: &KernelCalibration,
    quad: &KernelQuad,
) -> Result<Complex64> {
    if !(seed.delta() > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "kernel representation needs a seed with positive smallest exponent, got {}",
            seed.delta()
        )));
    }
    if calibration.weight != seed.weight() || calibration.alpha != alpha {
        return Err(Error::InvalidArgument("calibration was made for a different (k, alpha)".into()));
    }
    let f0 = covariant_seed_evaluator(seed, 1e-16);
    Ok(calibration.constant * kernel_integral(seed.weight(), alpha, delta, f0, quad)?)
}

/// Least-squares fit of log|F^α| against log ε with δ = δ_c(1 − ε).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HagedornFit {
    pub delta_c: f64,
    pub exponent: f64,
    pub samples: Vec<(f64, f64)>,
}

/// Relative distances ε from δ_c at which the scan samples.
#[derive(Debug, Clone, Copy)]
pub struct FitWindow {
    pub eps_min: f64,
    pub eps_max: f64,
    pub points: usize,
}

impl Default for FitWindow {
    fn default() -> Self {
        Self { eps_min: 1e-9, eps_max: 1e-5, points: 9 }
    }
}

/// Power-law exponent of the deformed series approaching the upper
/// Hagedorn point δ_c = 1/(8π|Δ|α).
pub fn hagedorn_scan(seed: &HoloSeed, alpha: f64, window: &FitWindow) -> Result<HagedornFit> {
    let delta = seed.delta();
    if !(delta < 0.0) {
        return Err(Error::InvalidArgument(format!("no Hagedorn point: smallest exponent {delta} is not negative")));
    }
    let w = seed_window(seed, alpha)?;
    if window.eps_min < 1e-10 {
        return Err(Error::InvalidArgument(format!(
            "eps_min = {:e} is too close to the singularity for binary64",
            window.eps_min
        )));
    }
    if !(window.eps_min < window.eps_max && window.points >= 2 && window.eps_max < 1.0) {
        return Err(Error::InvalidArgument("fit window must satisfy eps_min < eps_max < 1 with >= 2 points".into()));
    }
    let delta_c = w.hi;
    let params = DeformParams::raw(alpha)?;
    let opts = SeriesOptions::new(1e-14);
    let (l0, l1) = (window.eps_min.ln(), window.eps_max.ln());
    let mut samples = Vec::with_capacity(window.points);
    for i in 0..window.points {
        let le = l0 + (l1 - l0) * i as f64 / (window.points - 1) as f64;
        let d = delta_c * (1.0 - le.exp());
        let v = deform_eval(seed, &params, ModulusPoint::real(d)?, &opts)?.value;
        samples.push((le, v.norm().ln()));
    }
    let n = samples.len() as f64;
    let mx = samples.iter().map(|s| s.0).sum::<f64>() / n;
    let my = samples.iter().map(|s| s.1).sum::<f64>() / n;
    let sxy: f64 = samples.iter().map(|s| (s.0 - mx) * (s.1 - my)).sum();
    let sxx: f64 = samples.iter().map(|s| (s.0 - mx).powi(2)).sum();
    Ok(HagedornFit { delta_c, exponent: sxy / sxx, samples })
}
