//! Quadrature engines: Gauss–Hermite, adaptive Gauss–Kronrod (7/15),
//! tanh-sinh on finite intervals, and a step-halving trapezoid rule for
//! analytic integrands with double-exponential decay on the real line.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BinaryHeap;
use std::cmp::Ordering;

use crate::error::{Error, Result};

pub const MAX_HERMITE_ORDER: usize = 200;

/// Integration rule selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadRule {
    GaussHermite,
    AdaptiveInterval,
    TanhSinh,
}

/// Integration domain. `RealLine` with [`QuadRule::GaussHermite`] means the
/// integrand is understood to carry the weight `exp(-t^2)` implicitly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    Interval(f64, f64),
    HalfLine(f64),
    RealLine,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rule: QuadRule,
    pub order: usize,
    pub tol: f64,
    pub domain: Domain,
}

impl QuadratureSpec {
    pub fn adaptive(domain: Domain, tol: f64) -> Self {
        Self { rule: QuadRule::AdaptiveInterval, order: 15, tol, domain }
    }

    pub fn gauss_hermite(order: usize) -> Self {
        Self { rule: QuadRule::GaussHermite, order, tol: 1e-12, domain: Domain::RealLine }
    }

    pub fn validate(&self) -> Result<()> {
        if self.order < 1 {
            return Err(Error::InvalidArgument("quadrature order must be >= 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidArgument("quadrature tolerance must be > 0".into()));
        }
        Ok(())
    }
}

/// Integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadValue {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

/// Eigenvalues of a symmetric tridiagonal matrix (diagonal `d`, off-diagonal
/// `e[1..]`) by implicit QL with Wilkinson shifts.
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    if n > 0 {
        e[n - 1] = 0.0;
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut early = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

/// Nodes and weights for `∫ f(t) exp(-t^2) dt`, ascending in `t`.
///
/// Nodes start as eigenvalues of the Jacobi matrix and are polished by
/// Newton steps on the orthonormal Hermite recurrence, which also yields the
/// weights `2 / (h'_n)^2`.
pub fn gauss_hermite(order: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if order == 0 || order > MAX_HERMITE_ORDER {
        return Err(Error::OrderOutOfRange { order, max: MAX_HERMITE_ORDER });
    }
    let n = order;
    let mut d = vec![0.0; n];
    let mut e: Vec<f64> = (0..n).map(|j| (j as f64 / 2.0).sqrt()).collect();
    tridiagonal_eigenvalues(&mut d, &mut e);
    d.sort_by(f64::total_cmp);
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let nf = n as f64;
    let mut w = vec![0.0; n];
    for (i, xi) in d.iter_mut().enumerate() {
        let mut z = *xi;
        let mut pp = 0.0;
        for _ in 0..4 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let step = p1 / pp;
            z -= step;
            if step.abs() <= 1e-16 * z.abs().max(1.0) {
                break;
            }
        }
        *xi = z;
        w[i] = 2.0 / (pp * pp);
    }
    // Symmetrize to remove rounding asymmetry.
    for i in 0..n / 2 {
        let x = 0.5 * (d[n - 1 - i] - d[i]);
        let wi = 0.5 * (w[i] + w[n - 1 - i]);
        d[i] = -x;
        d[n - 1 - i] = x;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        d[n / 2] = 0.0;
    }
    Ok((d, w))
}

/// Applies an `order`-point Gauss–Hermite rule to `f` (weight implicit).
pub fn gauss_hermite_apply<F>(order: usize, f: F) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let (x, w) = gauss_hermite(order)?;
    let mut acc = crate::numkit::sum::SumAccumulator::default();
    for (xi, wi) in x.iter().zip(&w) {
        acc.add(f(*xi) * *wi)?;
    }
    Ok(acc.value())
}

// Gauss–Kronrod 7/15 abscissae and weights.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F>(f: &F, a: f64, b: f64) -> (Complex64, f64, f64)
where
    F: Fn(f64) -> Complex64,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        kron += (f1 + f2) * WGK[j];
        resabs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let value = kron * h;
    let err = ((kron - gauss) * h).norm();
    let resabs = resabs * h.abs();
    (value, err.max(50.0 * f64::EPSILON * resabs), resabs)
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Options for [`adaptive_quad_with`].
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
    /// Initial number of equal panels.
    pub initial_panels: usize,
}

impl AdaptiveOptions {
    pub fn new(tol: f64) -> Self {
        Self { abs_tol: tol, rel_tol: tol, max_panels: 4000, initial_panels: 1 }
    }
}

fn adaptive_interval<F>(f: &F, a: f64, b: f64, opts: &AdaptiveOptions) -> Result<QuadValue>
where
    F: Fn(f64) -> Complex64,
{
    if a == b {
        return Ok(QuadValue { value: Complex64::new(0.0, 0.0), error: 0.0, evaluations: 0 });
    }
    let mut heap = BinaryHeap::new();
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    let mut evals = 0;
    let np = opts.initial_panels.max(1);
    for i in 0..np {
        let lo = a + (b - a) * i as f64 / np as f64;
        let hi = a + (b - a) * (i + 1) as f64 / np as f64;
        let (v, e, _) = gk15(f, lo, hi);
        evals += 15;
        total += v;
        total_err += e;
        heap.push(Panel { a: lo, b: hi, value: v, err: e });
    }
    loop {
        if !total.re.is_finite() || !total.im.is_finite() {
            return Err(Error::NonFinite { index: evals });
        }
        let target = opts.abs_tol.max(opts.rel_tol * total.norm());
        if total_err <= target {
            return Ok(QuadValue { value: total, error: total_err, evaluations: evals });
        }
        if heap.len() >= opts.max_panels {
            return Err(Error::QuadratureNotConverged { value: total, estimate: total_err });
        }
        let worst = heap.pop().expect("heap non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::QuadratureNotConverged { value: total, estimate: total_err });
        }
        let (v1, e1, _) = gk15(f, worst.a, mid);
        let (v2, e2, _) = gk15(f, mid, worst.b);
        evals += 30;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel { a: worst.a, b: mid, value: v1, err: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, err: e2 });
    }
}

/// Maps `[a, ∞)` onto `[0, 1)` via `x = a + e^u - 1`, `u = t/(1-t)`.
fn half_line_integrand<F>(f: &F, a: f64) -> impl Fn(f64) -> Complex64 + '_
where
    F: Fn(f64) -> Complex64,
{
    move |t: f64| {
        let one_minus = 1.0 - t;
        let u = t / one_minus;
        if u > 600.0 {
            return Complex64::new(0.0, 0.0);
        }
        let eu = u.exp();
        let x = a + u.exp_m1();
        let v = f(x) * (eu / (one_minus * one_minus));
        if v.re.is_finite() && v.im.is_finite() {
            v
        } else {
            Complex64::new(0.0, 0.0)
        }
    }
}

/// Adaptive Gauss–Kronrod integration of a complex-valued function.
pub fn adaptive_quad_with<F>(f: F, domain: Domain, opts: &AdaptiveOptions) -> Result<QuadValue>
where
    F: Fn(f64) -> Complex64,
{
    match domain {
        Domain::Interval(a, b) => adaptive_interval(&f, a, b, opts),
        Domain::HalfLine(a) => {
            let g = half_line_integrand(&f, a);
            adaptive_interval(&g, 0.0, 1.0, opts)
        }
        Domain::RealLine => {
            let right = adaptive_interval(&half_line_integrand(&f, 0.0), 0.0, 1.0, opts)?;
            let reflected = |x: f64| f(-x);
            let left = adaptive_interval(&half_line_integrand(&reflected, 0.0), 0.0, 1.0, opts)?;
            Ok(QuadValue {
                value: right.value + left.value,
                error: right.error + left.error,
                evaluations: right.evaluations + left.evaluations,
            })
        }
    }
}

pub fn adaptive_quad<F>(f: F, domain: Domain, tol: f64) -> Result<QuadValue>
where
    F: Fn(f64) -> Complex64,
{
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    adaptive_quad_with(f, domain, &AdaptiveOptions::new(tol))
}

/// Real-valued convenience wrapper around [`adaptive_quad`].
pub fn adaptive_quad_real<F>(f: F, domain: Domain, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let q = adaptive_quad(|x| Complex64::new(f(x), 0.0), domain, tol)?;
    Ok((q.value.re, q.error))
}

/// Tanh-sinh quadrature on a finite interval with level doubling.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, tol: f64, max_levels: usize) -> Result<QuadValue>
where
    F: Fn(f64) -> Complex64,
{
    use std::f64::consts::FRAC_PI_2;
    let r = 0.5 * (b - a);
    let node = |t: f64| -> (f64, f64, f64) {
        // x = tanh(pi/2 sinh t); returns (x, 1 - |x| measured from the nearer endpoint, weight)
        let s = FRAC_PI_2 * t.sinh();
        let ch = s.cosh();
        let x = s.tanh();
        let w = FRAC_PI_2 * t.cosh() / (ch * ch);
        let comp = 1.0 / (s.abs().exp() * ch);
        (x, comp, w)
    };
    let eval = |t: f64| -> Complex64 {
        let (x, comp, w) = node(t);
        if w == 0.0 || comp == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        // Evaluate near endpoints from the nearer side to keep precision.
        let xx = if x > 0.0 { b - r * comp } else { a + r * comp };
        let v = f(xx) * w;
        if v.re.is_finite() && v.im.is_finite() { v } else { Complex64::new(0.0, 0.0) }
    };
    let tmax = 4.5;
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= tmax {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut estimate = sum * h * r;
    let mut evals = 2 * k;
    for _ in 0..max_levels {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= tmax {
            let t = k as f64 * h;
            sum += eval(t) + eval(-t);
            k += 2;
        }
        evals += k;
        let next = sum * h * r;
        let diff = (next - estimate).norm();
        estimate = next;
        if diff <= tol.max(tol * next.norm()) {
            return Ok(QuadValue { value: next, error: diff, evaluations: evals });
        }
    }
    Err(Error::QuadratureNotConverged { value: estimate, estimate: f64::NAN })
}

/// Trapezoid rule on the whole real line for analytic integrands that decay
/// at least exponentially. The range `[-L, L]` is grown until the endpoint
/// samples are negligible, then the step is halved until two successive
/// estimates agree to `tol` (absolute or relative, whichever is looser).
pub fn trapezoid_line<F>(f: F, center: f64, h0: f64, tol: f64) -> Result<QuadValue>
where
    F: Fn(f64) -> Complex64,
{
    let mut half_width = 4.0 * h0;
    let mut peak = f(center).norm();
    loop {
        let lo = f(center - half_width).norm();
        let hi = f(center + half_width).norm();
        peak = peak.max(lo).max(hi);
        if (lo.max(hi) <= 1e-18 * peak.max(f64::MIN_POSITIVE)) || half_width > 1e4 * h0.max(1.0) {
            break;
        }
        half_width *= 1.5;
    }
    let mut h = h0;
    let mut n = (half_width / h).ceil() as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in -n..=n {
        sum += f(center + j as f64 * h);
    }
    let mut evals = (2 * n + 1) as usize;
    let mut estimate = sum * h;
    for _ in 0..14 {
        h *= 0.5;
        n *= 2;
        let mut j = -n + 1;
        while j < n {
            sum += f(center + j as f64 * h);
            j += 2;
        }
        evals += n as usize;
        let next = sum * h;
        let diff = (next - estimate).norm();
        estimate = next;
        if diff <= tol.max(tol * next.norm()) {
            return Ok(QuadValue { value: next, error: diff.max(f64::EPSILON * next.norm()), evaluations: evals });
        }
    }
    Err(Error::QuadratureNotConverged { value: estimate, estimate: f64::NAN })
}

/// Dispatches on a [`QuadratureSpec`].
pub fn integrate<F>(spec: &QuadratureSpec, f: F) -> Result<QuadValue>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    match spec.rule {
        QuadRule::GaussHermite => {
            if spec.domain != Domain::RealLine {
                return Err(Error::InvalidArgument("Gauss-Hermite requires the real line".into()));
            }
            let v = gauss_hermite_apply(spec.order, &f)?;
            // The difference to a rule of roughly half the order serves as the estimate.
            let lower = gauss_hermite_apply((spec.order / 2).max(1), &f)?;
            Ok(QuadValue { value: v, error: (v - lower).norm(), evaluations: spec.order })
        }
        QuadRule::AdaptiveInterval => adaptive_quad(f, spec.domain, spec.tol),
        QuadRule::TanhSinh => match spec.domain {
            Domain::Interval(a, b) => tanh_sinh(f, a, b, spec.tol, 12),
            Domain::HalfLine(a) => {
                let g = half_line_integrand(&f, a);
                tanh_sinh(g, 0.0, 1.0, spec.tol, 12)
            }
            Domain::RealLine => Err(Error::InvalidArgument("tanh-sinh needs a finite or half-line domain".into())),
        },
    }
}
