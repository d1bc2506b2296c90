//! Mellin transforms and Dirichlet series of seeds, the multiplier I^α(k,s)
//! relating deformed and undeformed transforms, and fixed-β Dirichlet sums.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::deform_holo::{deform_eval, deform_exponent, DeformParams, Normalization, TermDeformation};
use crate::error::{Error, Result};
use crate::numkit::{
    adaptive_quad, gamma_complex, gauss_hermite, principal_power, principal_powf, recip_gamma, tanh_sinh,
    trapezoid_line, tricomi_u, Domain, HyperOptions, SumAccumulator,
};
use crate::spectra::{eval_holo, HoloSeed, ModulusPoint, SeriesOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MellinRoute {
    Termwise,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MellinValue {
    pub s: Complex64,
    pub r: Complex64,
    pub route: MellinRoute,
    pub error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultiplierRoute {
    /// closed form when 1/α is within the ₁F₁ cap and b = 2s−k+1 is not an integer
    #[default]
    Auto,
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultiplierValue {
    pub k: f64,
    pub s: Complex64,
    pub alpha: f64,
    pub value: Complex64,
    pub route: MultiplierRoute,
    pub error: f64,
}

const BERNOULLI: [f64; 6] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0];

/// Σ_{j>N} j^{−w} by Euler–Maclaurin, with the last correction as error.
fn power_tail(w: Complex64, n: f64) -> (Complex64, f64) {
    let n = Complex64::new(n, 0.0);
    let mut v = n.powc(1.0 - w) / (w - 1.0) - 0.5 * n.powc(-w);
    let mut poch = w; // (w)_{2k−1}
    let mut fact = 2.0; // (2k)!
    let mut last = 0.0;
    for (i, b) in BERNOULLI.iter().enumerate() {
        let m = 2 * i + 1;
        let term = *b / fact * poch * n.powc(-w - m as f64);
        v += term;
        last = term.norm();
        poch *= (w + m as f64) * (w + m as f64 + 1.0);
        fact *= (2 * i + 3) as f64 * (2 * i + 4) as f64;
    }
    (v, last)
}

/// φ(s) = Σ aⱼ λⱼ^{−s} with an error estimate. Terms with λ ≤ 0 are rejected.
pub fn dirichlet_series(seed: &HoloSeed, s: Complex64, tol: f64) -> Result<(Complex64, f64)> {
    if let Some(t) = seed.nonpositive_terms()?.first() {
        return Err(Error::InvalidArgument(format!(
            "exponent {} <= 0 present; subtract non-positive terms first",
            t.lambda
        )));
    }
    if let Some(start) = seed.theta3_start() {
        // 2 Σ_{j≥start} (j²/2)^{−s}
        if s.re <= 0.5 {
            return Err(Error::Divergent { s, reason: "Re s <= 1/2 for the theta spectrum".into() });
        }
        let scale = 2.0 * Complex64::new(2.0, 0.0).powc(s);
        const N: usize = 64;
        let mut acc = SumAccumulator::default();
        for j in start..=N.max(start) {
            acc.add(Complex64::new(j as f64, 0.0).powc(-2.0 * s))?;
        }
        let (tail, err) = power_tail(2.0 * s, N.max(start) as f64);
        let v = scale * (acc.value() + tail);
        return Ok((v, scale.norm() * (err + acc.rounding_estimate())));
    }
    let mut acc = SumAccumulator::default();
    let mut mags: Vec<(f64, f64)> = Vec::new();
    let mut j = 0;
    loop {
        let t = match seed.term(j) {
            Ok(Some(t)) => t,
            Ok(None) => return Ok((acc.value(), acc.rounding_estimate())),
            Err(Error::OrderOutOfRange { .. }) => {
                let est = tail_from_power_law(&mags, s)?;
                if est <= tol * acc.value().norm() {
                    return Ok((acc.value(), est));
                }
                return Err(Error::ToleranceUnreachable { terms: j, estimate: est, tol });
            }
            Err(e) => return Err(e),
        };
        let v = t.a * Complex64::new(t.lambda, 0.0).powc(-s);
        acc.add(v)?;
        mags.push((t.lambda, v.norm()));
        j += 1;
        if j >= 256 && j % 128 == 0 {
            let est = tail_from_power_law(&mags, s)?;
            if est <= tol * acc.value().norm() {
                return Ok((acc.value(), est));
            }
        }
    }
}

/// Tail of Σ |t_j| assuming |t_j| ≈ M λ^{−p} with unit spacing in λ; p is
/// read off the envelopes of the two halves of the terms seen so far.
fn tail_from_power_law(mags: &[(f64, f64)], s: Complex64) -> Result<f64> {
    let n = mags.len();
    if n < 16 {
        return Ok(f64::INFINITY);
    }
    let w = (n / 8).max(4);
    let env = |lo: usize| {
        let slice = &mags[lo..lo + w];
        let m = slice.iter().map(|x| x.1).fold(0.0, f64::max);
        let l = slice.iter().map(|x| x.0).sum::<f64>() / w as f64;
        (l, m)
    };
    let (l1, m1) = env(n / 2 - w / 2);
    let (l2, m2) = env(n - w);
    if m2 == 0.0 {
        return Ok(0.0);
    }
    let p = -(m2 / m1).ln() / (l2 / l1).ln();
    if !(p > 1.0) {
        return Err(Error::Divergent {
            s,
            reason: format!("terms decay like lambda^-{p:.3}; the series does not converge here"),
        });
    }
    Ok(m2 * l2 / (p - 1.0))
}

/// Termwise Mellin transform R(s) = Γ(s) Σ aⱼ (2πλⱼ)^{−s}.
pub fn mellin_seed(seed: &HoloSeed, s: Complex64, tol: f64) -> Result<MellinValue> {
    let (phi, err) = dirichlet_series(seed, s, tol)?;
    let g = gamma_complex(s)?;
    let scale = g * Complex64::new(2.0 * PI, 0.0).powc(-s);
    Ok(MellinValue { s, r: scale * phi, route: MellinRoute::Termwise, error: scale.norm() * err })
}

/// φ(s) = (2π)^s/Γ(s) · R(s).
pub fn dirichlet_from_mellin(r: &MellinValue) -> Complex64 {
    r.r * Complex64::new(2.0 * PI, 0.0).powc(r.s) * recip_gamma(r.s)
}

/// `∫₀^∞ δ^{s−1}(F(δ) − c) dδ` for F of weight k with F(1/δ) = δ^k F(δ):
/// the (0,1) piece is mapped onto (1,∞), giving
/// `∫₁^∞ (δ^{s−1} + δ^{k−s−1})(F − c) dδ − c/s − c/(k−s)`.
pub fn mellin_fold<F>(f: F, k: f64, constant: Complex64, s: Complex64, tol: f64) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let failure = std::cell::RefCell::new(None);
    let g = |d: f64| -> Complex64 {
        match f(d) {
            Ok(v) => {
                let ln = d.ln();
                ((s - 1.0) * ln).exp() * (v - constant) + ((k - s - 1.0) * ln).exp() * (v - constant)
            }
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let q = adaptive_quad(g, Domain::HalfLine(1.0), tol)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let mut v = q.value;
    if constant != Complex64::new(0.0, 0.0) {
        if s.norm() == 0.0 || (k - s).norm() == 0.0 {
            return Err(Error::Pole { function: "mellin", at: s });
        }
        v -= constant / s + constant / (k - s);
    }
    Ok((v, q.error))
}

/// Quadrature Mellin transform of a seed. Covariant seeds use the fold at
/// δ = 1 (their constant term is subtracted); others are integrated
/// directly over (0, ∞).
pub fn mellin_quad(seed: &HoloSeed, s: Complex64, tol: f64) -> Result<MellinValue> {
    let opts = SeriesOptions::new(1e-16);
    if seed.is_covariant() {
        let constant = constant_term(seed)?;
        let f = |d: f64| Ok(eval_holo(seed, ModulusPoint::real(d)?, &opts)?.value);
        let (r, error) = mellin_fold(f, seed.weight(), constant, s, tol)?;
        return Ok(MellinValue { s, r, route: MellinRoute::Quadrature, error });
    }
    if let Some(t) = seed.nonpositive_terms()?.first() {
        return Err(Error::InvalidArgument(format!("exponent {} <= 0 makes the integral diverge", t.lambda)));
    }
    let integrand = |d: f64| -> Complex64 {
        match ModulusPoint::real(d).and_then(|p| eval_holo(seed, p, &opts)) {
            Ok(v) => ((s - 1.0) * d.ln()).exp() * v.value,
            Err(_) => Complex64::new(f64::NAN, 0.0),
        }
    };
    let head = tanh_sinh(integrand, 0.0, 1.0, tol, 14)?;
    let tail = adaptive_quad(integrand, Domain::HalfLine(1.0), tol)?;
    Ok(MellinValue { s, r: head.value + tail.value, route: MellinRoute::Quadrature, error: head.error + tail.error })
}

fn constant_term(seed: &HoloSeed) -> Result<Complex64> {
    let mut c = Complex64::new(0.0, 0.0);
    for t in seed.nonpositive_terms()? {
        if t.lambda < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "negative exponent {} has no convergent Mellin transform",
                t.lambda
            )));
        }
        c += t.a;
    }
    Ok(c)
}

/// `T(c) = ∫ (c + iαt)^{1−k} e^{−αt²} dt` by Gauss–Hermite in u = √α t.
fn t_integral(c: f64, alpha: f64, k: f64, nodes: &(Vec<f64>, Vec<f64>)) -> Result<Complex64> {
    let sa = alpha.sqrt();
    let mut acc = Complex64::new(0.0, 0.0);
    for (u, w) in nodes.0.iter().zip(&nodes.1) {
        acc += *w * principal_powf(Complex64::new(c, sa * u), 1.0 - k)?;
    }
    Ok(acc / sa)
}

/// Multiplier by its integral definition, written in x = ln u:
/// `(2^{1−k}/2π) ∫ e^{(s−k/2)x} e^{−sinh²(x/2)/α} T(cosh(x/2)) dx`.
/// The trapezoid grid is symmetric about 0, so s ↔ k−s is exact up to rounding.
pub fn i_alpha_quadrature(k: f64, s: Complex64, alpha: f64, hermite_order: usize, tol: f64) -> Result<(Complex64, f64)> {
    let nodes = gauss_hermite(hermite_order)?;
    let failure = std::cell::RefCell::new(None);
    let f = |x: f64| -> Complex64 {
        let sh = (0.5 * x).sinh();
        let g = -sh * sh / alpha;
        if g < -745.0 {
            return Complex64::new(0.0, 0.0);
        }
        match t_integral((0.5 * x).cosh(), alpha, k, &nodes) {
            Ok(t) => ((s - 0.5 * k) * x + g).exp() * t,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let h0 = (alpha.sqrt()).min(0.5);
    let q = trapezoid_line(f, 0.0, h0, tol)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let c = 2f64.powf(1.0 - k) / (2.0 * PI);
    Ok((c * q.value, c * q.error))
}

/// Multiplier in closed form, `2^{1−k} α^{−s} U(s, 2s−k+1, 1/α)`.
pub fn i_alpha_closed_form(k: f64, s: Complex64, alpha: f64, opts: &HyperOptions) -> Result<Complex64> {
    let b = 2.0 * s - k + 1.0;
    let z = Complex64::new(1.0 / alpha, 0.0);
    let u = tricomi_u(s, b, z, opts)?;
    Ok(2f64.powf(1.0 - k) * principal_power(Complex64::new(alpha, 0.0), -s)? * u)
}

/// I^α(k, s), the factor with R^α = I^α · R⁰ for the raw deformation.
pub fn i_alpha(k: f64, s: Complex64, alpha: f64, route: MultiplierRoute) -> Result<MultiplierValue> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!("alpha = {alpha} must be >= 0")));
    }
    if alpha == 0.0 {
        return Ok(MultiplierValue { k, s, alpha, value: Complex64::new(2f64.powf(1.0 - k), 0.0), route, error: 0.0 });
    }
    let opts = HyperOptions::default();
    let b = 2.0 * s - k + 1.0;
    let integer_b = b.im == 0.0 && (b.re - b.re.round()).abs() < 1e-9;
    let chosen = match route {
        MultiplierRoute::Auto if 1.0 / alpha <= opts.cap && !integer_b => MultiplierRoute::ClosedForm,
        MultiplierRoute::Auto => MultiplierRoute::Quadrature,
        r => r,
    };
    match chosen {
        MultiplierRoute::ClosedForm => {
            let v = i_alpha_closed_form(k, s, alpha, &opts)?;
            Ok(MultiplierValue { k, s, alpha, value: v, route: chosen, error: 1e-12 * v.norm() })
        }
        _ => {
            let (v, e) = i_alpha_quadrature(k, s, alpha, 96, 1e-13)?;
            Ok(MultiplierValue { k, s, alpha, value: v, route: MultiplierRoute::Quadrature, error: e })
        }
    }
}

/// R^α(s) of the raw deformed seed, folding at δ = 1 with the deformed
/// covariance. The deformed constant term is 2^{1−k} times the seed's.
pub fn deformed_mellin(seed: &HoloSeed, alpha: f64, s: Complex64, tol: f64) -> Result<MellinValue> {
    if !seed.is_covariant() {
        return Err(Error::InvalidArgument("deformed Mellin transform needs an S-covariant seed".into()));
    }
    let k = seed.weight();
    // evaluated by the same code path as the series so that F − c cancels exactly
    let constant = constant_term(seed)? * TermDeformation::new(0.0, k, alpha, Complex64::new(1.0, 0.0))?.value();
    let params = DeformParams::new(alpha, Normalization::Raw)?;
    let opts = SeriesOptions::new(1e-16);
    let f = |d: f64| Ok(deform_eval(seed, &params, ModulusPoint::real(d)?, &opts)?.value);
    let (r, error) = mellin_fold(f, k, constant, s, tol)?;
    Ok(MellinValue { s, r, route: MellinRoute::Quadrature, error })
}

/// R⁰ of a covariant seed with its constant term removed.
pub fn seed_mellin(seed: &HoloSeed, s: Complex64, tol: f64) -> Result<MellinValue> {
    mellin_quad(seed, s, tol)
}

/// Product-identity check at one s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProductCheck {
    pub s: Complex64,
    pub r0: Complex64,
    pub r_alpha: Complex64,
    pub multiplier: Complex64,
    /// |R^α − I^α R⁰| / |R⁰|
    pub residual: f64,
}

pub fn product_identity(seed: &HoloSeed, alpha: f64, s: Complex64, tol: f64) -> Result<ProductCheck> {
    let r0 = seed_mellin(seed, s, tol)?.r;
    let ra = deformed_mellin(seed, alpha, s, tol)?.r;
    let i = i_alpha(seed.weight(), s, alpha, MultiplierRoute::Quadrature)?.value;
    Ok(ProductCheck { s, r0, r_alpha: ra, multiplier: i, residual: (ra - i * r0).norm() / r0.norm() })
}

/// Zero of Re R⁰(σ + it) for t in [t_lo, t_hi] by bisection; the bracket
/// must show a sign change. On the symmetry line σ = k/2 of a real seed
/// R⁰ is real, so this locates a zero of R⁰ itself.
pub fn locate_zero(seed: &HoloSeed, sigma: f64, t_lo: f64, t_hi: f64, tol: f64) -> Result<Complex64> {
    let f = |t: f64| -> Result<f64> { Ok(seed_mellin(seed, Complex64::new(sigma, t), 1e-13)?.r.re) };
    let (mut a, mut b) = (t_lo, t_hi);
    let (mut fa, fb) = (f(a)?, f(b)?);
    if fa.signum() == fb.signum() {
        return Err(Error::InvalidArgument(format!("no sign change of Re R on [{t_lo}, {t_hi}]")));
    }
    while b - a > tol {
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(Complex64::new(sigma, 0.5 * (a + b)))
}

/// Fixed-β Dirichlet series Σ_{j<Nmax} aⱼ^β (λⱼ_β)^{−s} with
/// aⱼ^β = aⱼ (1+S̃)^{1−k}/S̃, S̃ = √(1+4βλⱼ), and λ_β the deformed number.
/// Returns the value and an estimate of the omitted tail.
pub fn dirichlet_beta(
    seed: &HoloSeed,
    beta: Complex64,
    s: Complex64,
    nmax: usize,
    normalization: Normalization,
) -> Result<(Complex64, f64)> {
    let k = seed.weight();
    let mut acc = SumAccumulator::default();
    let mut mags = Vec::new();
    let mut ended = false;
    for j in 0..nmax {
        let Some(t) = seed.term(j)? else {
            ended = true;
            break;
        };
        if t.lambda <= 0.0 {
            return Err(Error::InvalidArgument(format!("exponent {} <= 0 in a Dirichlet series", t.lambda)));
        }
        let st = crate::numkit::sqrt_off_cut(1.0 + 4.0 * beta * t.lambda)?;
        let ab = t.a * principal_powf(1.0 + st, 1.0 - k)? / st;
        let lb = deform_exponent(Complex64::new(t.lambda, 0.0), beta)?;
        let v = ab * principal_power(lb, -s)?;
        acc.add(v)?;
        mags.push((t.lambda, v.norm()));
    }
    let tail = if ended { 0.0 } else { tail_from_power_law(&mags, s).unwrap_or(f64::INFINITY) };
    let mut v = acc.value();
    let mut tail = tail;
    if normalization == Normalization::Unit {
        let c = 2f64.powf(1.0 - k);
        v /= c;
        tail /= c;
    }
    Ok((v, tail))
}

/// Γ(s)(2π)^{−s} φ^β(s), the completion under which the undeformed series
/// is reflection symmetric.
pub fn completed_dirichlet_beta(seed: &HoloSeed, beta: Complex64, s: Complex64, nmax: usize) -> Result<Complex64> {
    let (phi, _) = dirichlet_beta(seed, beta, s, nmax, Normalization::Unit)?;
    Ok(gamma_complex(s)? * Complex64::new(2.0 * PI, 0.0).powc(-s) * phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::adaptive_quad;
    use crate::spectra::{eta24, theta3, Term};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent route: 2^{1−k}/Γ(s) ∫₀^∞ y^{s−1}(1+αy)^{s−k} e^{−y} dy.
    fn i_alpha_laplace(k: f64, s: Complex64, alpha: f64) -> Complex64 {
        let f = |y: f64| {
            if y == 0.0 {
                return c(0.0, 0.0);
            }
            ((s - 1.0) * y.ln()).exp() * ((s - k) * (1.0 + alpha * y).ln()).exp() * (-y).exp()
        };
        let q = adaptive_quad(f, Domain::HalfLine(0.0), 1e-13).unwrap();
        2f64.powf(1.0 - k) * q.value * recip_gamma(s)
    }

    #[test]
    fn multiplier_reference_values() {
        for (alpha, want) in [(0.2, 1.639_168_341_030_547), (0.5, 1.944_486_974_792_017)] {
            let q = i_alpha(0.5, c(1.2, 0.0), alpha, MultiplierRoute::Quadrature).unwrap();
            let cf = i_alpha(0.5, c(1.2, 0.0), alpha, MultiplierRoute::ClosedForm).unwrap();
            assert!((q.value.re - want).abs() < 1e-10, "{alpha}: {}", q.value);
            assert!((cf.value.re - want).abs() < 1e-10, "{alpha}: {}", cf.value);
            assert!((i_alpha_laplace(0.5, c(1.2, 0.0), alpha).re - want).abs() < 1e-10);
        }
        let q = i_alpha(12.0, c(13.0, 0.0), 0.2, MultiplierRoute::Auto).unwrap();
        assert_eq!(q.route, MultiplierRoute::Quadrature);
        assert!((q.value.re - 0.001_757_812_5).abs() < 1e-13);
    }

    #[test]
    fn multiplier_reflection() {
        let a = i_alpha(0.5, c(0.25, 3.0), 0.3, MultiplierRoute::Quadrature).unwrap().value;
        let b = i_alpha(0.5, c(0.25, -3.0), 0.3, MultiplierRoute::Quadrature).unwrap().value;
        assert!((a - b).norm() < 1e-12);
        assert!((a.re / 2f64.sqrt() - 0.063_408_213_331_759_443).abs() < 1e-10, "{a}");
    }

    #[test]
    fn multiplier_small_alpha() {
        let v = i_alpha(0.5, c(1.2, 0.0), 1e-3, MultiplierRoute::Quadrature).unwrap().value;
        assert!((v.re - 2f64.sqrt()).abs() < 2e-2);
        assert!((v.re - 1.415_401_110).abs() < 1e-8);
    }

    #[test]
    fn closed_form_rejects_integer_b() {
        assert!(i_alpha(12.0, c(13.0, 0.0), 0.2, MultiplierRoute::ClosedForm).is_err());
        assert!(matches!(
            i_alpha(0.5, c(1.2, 0.0), 0.01, MultiplierRoute::ClosedForm),
            Err(Error::ArgumentCap { .. })
        ));
    }

    #[test]
    fn theta_dirichlet_at_one() {
        let t = theta3().drop_leading(1);
        let r = mellin_seed(&t, c(1.0, 0.0), 1e-14).unwrap();
        assert!((r.r.re - PI / 3.0).abs() < 1e-8);
        let phi = dirichlet_from_mellin(&r);
        let (direct, _) = dirichlet_series(&t, c(1.0, 0.0), 1e-14).unwrap();
        assert!((phi - direct).norm() < 1e-12 * direct.norm());
    }

    #[test]
    fn theta_dirichlet_boundary() {
        let t = theta3().drop_leading(1);
        assert!(matches!(mellin_seed(&t, c(0.5, 1.0), 1e-12), Err(Error::Divergent { .. })));
        assert!(mellin_seed(&theta3(), c(2.0, 0.0), 1e-12).is_err());
    }

    #[test]
    fn single_term_mellin() {
        let s = HoloSeed::from_terms("one", 0.0, vec![Term { lambda: 1.0, a: c(1.0, 0.0) }], true, false).unwrap();
        let t = mellin_seed(&s, c(2.0, 0.0), 1e-14).unwrap();
        assert!((t.r.re - 1.0 / (4.0 * PI * PI)).abs() < 1e-15);
        let q = mellin_quad(&s, c(2.0, 0.0), 1e-12).unwrap();
        assert!((q.r - t.r).norm() < 1e-10);
    }

    #[test]
    fn routes_agree_for_theta() {
        let q = mellin_quad(&theta3(), c(2.0, 0.0), 1e-12).unwrap();
        let t = mellin_seed(&theta3().drop_leading(1), c(2.0, 0.0), 1e-14).unwrap();
        assert!((q.r - t.r).norm() < 1e-8, "{} vs {}", q.r, t.r);
    }

    #[test]
    fn theta_reflection() {
        let a = mellin_quad(&theta3(), c(0.25, 3.0), 1e-12).unwrap().r;
        let b = mellin_quad(&theta3(), c(0.25, -3.0), 1e-12).unwrap().r;
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn eta24_dirichlet_converges() {
        let r = mellin_seed(&eta24(), c(13.0, 0.0), 1e-12).unwrap();
        let q = mellin_quad(&eta24(), c(13.0, 0.0), 1e-12).unwrap();
        assert!((r.r - q.r).norm() < 1e-8 * q.r.norm(), "{} vs {}", r.r, q.r);
    }

    #[test]
    fn product_identity_theta() {
        for s in [c(2.0, 0.0), c(0.25, 3.0)] {
            let p = product_identity(&theta3(), 0.1, s, 1e-11).unwrap();
            assert!(p.residual < 1e-7, "{s}: {:?}", p);
        }
    }

    #[test]
    fn first_zero_on_line() {
        let z = locate_zero(&theta3(), 0.25, 7.0, 7.1, 1e-9).unwrap();
        assert!((z.im - 7.067_362_571).abs() < 1e-6, "{z}");
    }

    #[test]
    fn beta_single_term() {
        let s = HoloSeed::from_terms("one", 0.5, vec![Term { lambda: 1.3, a: c(1.0, 0.0) }], true, false).unwrap();
        let beta = c(0.2, 0.1);
        let (v, tail) = dirichlet_beta(&s, beta, c(1.2, 0.0), 10, Normalization::Raw).unwrap();
        let st = (1.0 + 4.0 * beta * 1.3).sqrt();
        let lb = (st - 1.0) / (2.0 * beta);
        let want = (1.0 + st).powf(0.5) / st * lb.powc(c(-1.2, 0.0));
        assert!((v - want).norm() < 1e-13);
        assert_eq!(tail, 0.0);
    }

    #[test]
    fn beta_to_zero_recovers_dirichlet() {
        let t = eta24();
        let (v0, _) = dirichlet_beta(&t, c(0.0, 0.0), c(13.0, 0.0), 2000, Normalization::Unit).unwrap();
        let (phi, _) = dirichlet_series(&t, c(13.0, 0.0), 1e-14).unwrap();
        assert!((v0 - phi).norm() < 1e-12 * phi.norm());
        let (v, _) = dirichlet_beta(&t, c(1e-6, 0.0), c(13.0, 0.0), 2000, Normalization::Unit).unwrap();
        assert!((v - phi).norm() < 1e-4 * phi.norm());
    }
}
