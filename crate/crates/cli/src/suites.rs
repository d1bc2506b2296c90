//! Named verification suites. Each check is independent, runs on the rayon
//! pool, and is reported in the order it was declared.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::Value;

use ttdeform::deform_holo::{
    calibrate_kernel, deform_eval, hagedorn_scan, jacobi_residual, kernel_oracle, s_residual, seed_window,
    shifted_jacobi_residual, DeformParams, FitWindow, KernelQuad,
};
use ttdeform::deform_real::{
    dgh_kernel_oracle, dgh_monomial_multiplier, heat_flow_residual, invariant_real_evaluator, st_residuals,
    synthetic_hermitian_seed, DghQuad, RealVariant,
};
use ttdeform::maass::{
    eisenstein_real, holo_eisenstein_residuals, holo_eisenstein_term, laplacian_fd, FlowFactor, LatticeCutoff,
};
use ttdeform::mellin::{deformed_mellin, i_alpha, locate_zero, product_identity, MultiplierRoute};
use ttdeform::spectra::{eta24, eta_inverse, eval_holo, ising_z, theta3, HoloSeed, ModulusPoint, SeriesOptions};
use ttdeform::Error;

use crate::report::{CheckRecord, Comparison, Environment, VerificationReport};

pub const SUITES: [&str; 13] = [
    "s-invariance",
    "alpha-limit",
    "kernel-oracle",
    "thm1a",
    "zero-inheritance",
    "torus-invariance",
    "dgh-oracle",
    "maass-flow",
    "heat-flow",
    "jacobi",
    "partition",
    "eisenstein-holo",
    "real-weighted",
];

/// Acceptance criterion number to the suites that decide it.
pub fn criterion_suites(n: usize) -> Option<&'static [&'static str]> {
    const MAP: [&[&str]; 10] = [
        &["s-invariance"],
        &["alpha-limit"],
        &["kernel-oracle"],
        &["thm1a"],
        &["zero-inheritance"],
        &["torus-invariance", "dgh-oracle"],
        &["maass-flow", "heat-flow"],
        &["jacobi"],
        &["partition"],
        &["eisenstein-holo"],
    ];
    MAP.get(n.checked_sub(1)?).copied()
}

fn canonical(name: &str) -> Option<&'static str> {
    let n = match name {
        "thm1" => "s-invariance",
        "thm2a" => "torus-invariance",
        other => other,
    };
    SUITES.iter().copied().find(|s| *s == n)
}

pub fn suite_names() -> Vec<&'static str> {
    let mut v = SUITES.to_vec();
    v.extend(["all", "thm1", "thm2a"]);
    v
}

type Check = Box<dyn Fn() -> Vec<CheckRecord> + Send + Sync>;

fn one<F>(f: F) -> Check
where
    F: Fn() -> CheckRecord + Send + Sync + 'static,
{
    Box::new(move || vec![f()])
}

fn pt(a: f64, b: f64) -> ModulusPoint {
    ModulusPoint::new(a, b).expect("fixed points have Re > 0")
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cx_value(z: Complex64) -> Value {
    Value::from(vec![z.re, z.im])
}

/// Log–log slope of a least-squares line through (ln x, ln y).
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

const S_POINTS: [(f64, f64); 10] = [
    (1.0, 0.0),
    (0.8, 0.3),
    (1.3, -0.2),
    (0.6, 0.5),
    (1.5, 1.0),
    (0.7, -0.7),
    (2.0, 0.4),
    (0.5, 0.0),
    (1.1, 0.05),
    (0.9, -0.4),
];

fn s_invariance() -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    for (seed, name) in [(theta3(), "theta3"), (eta24(), "eta24"), (eta_inverse(), "eta-inverse")] {
        for alpha in [0.05, 0.2, 1.0] {
            let window = seed_window(&seed, alpha);
            let admissible: Vec<ModulusPoint> = S_POINTS
                .iter()
                .map(|&(a, b)| pt(a, b))
                .filter(|d| window.as_ref().is_ok_and(|w| w.contains(d.re()) && w.contains(d.s_image().re())))
                .collect();
            if admissible.is_empty() {
                let note = match &window {
                    Err(e) => format!("no admissible points: {e}"),
                    Ok(w) => format!("no sample point in ({}, {})", w.lo, w.hi),
                };
                checks.push(one(move || {
                    CheckRecord::new("S covariance of the deformed series", "inversion covariance")
                        .input("seed", name)
                        .input("alpha", alpha)
                        .check(0.0, 1e-9, Comparison::Below)
                        .with_note(note.clone())
                }));
            }
            for d in admissible {
                let seed = seed.clone();
                checks.push(one(move || {
                    CheckRecord::new("S covariance of the deformed series", "inversion covariance")
                        .input("seed", name)
                        .input("alpha", alpha)
                        .complex("delta", d.as_complex())
                        .result(s_residual(&seed, alpha, d, 1e-15), 1e-9, Comparison::Below)
                }));
            }
        }
    }
    checks
}

fn alpha_limit() -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    for (seed, name) in [(theta3(), "theta3"), (eta24(), "eta24")] {
        checks.push(one(move || {
            let d = pt(1.2, 0.3);
            let b = CheckRecord::new("slope of |F_raw - 2^(1-k) F| against alpha", "small-alpha limit")
                .input("seed", name)
                .complex("delta", d.as_complex());
            let run = || -> ttdeform::Result<Vec<(f64, f64)>> {
                let opts = SeriesOptions::new(1e-16);
                let f0 = eval_holo(&seed, d, &opts)?.value * 2f64.powf(1.0 - seed.weight());
                [1e-2, 1e-3, 1e-4]
                    .iter()
                    .map(|&a| Ok((a, (deform_eval(&seed, &DeformParams::raw(a)?, d, &opts)?.value - f0).norm())))
                    .collect()
            };
            match run() {
                Ok(pts) => {
                    let slope = loglog_slope(&pts);
                    b.input("alphas", pts.iter().map(|p| p.0).collect::<Vec<_>>())
                        .input("differences", pts.iter().map(|p| p.1).collect::<Vec<_>>())
                        .input("slope", slope)
                        .check((slope - 1.0).abs(), 0.1, Comparison::AtMost)
                }
                Err(e) => b.failed(0.1, Comparison::AtMost, e),
            }
        }));
    }
    checks
}

fn kernel_checks() -> Vec<Check> {
    let alpha = 0.2;
    let quad = KernelQuad::default();
    let mut checks: Vec<Check> = vec![one(move || {
        let b = CheckRecord::new("kernel calibration constant against 2^(1-k)/(2 pi)", "kernel representation")
            .input("seed", "eta24")
            .input("alpha", alpha);
        match calibrate_kernel(12.0, alpha, &quad) {
            Ok(cal) => b
                .input("constant", cal.constant)
                .input("expected", cal.expected)
                .below((cal.constant / cal.expected - 1.0).abs(), 1e-6),
            Err(e) => b.failed(1e-6, Comparison::Below, e),
        }
    })];
    for d in [0.6, 0.8, 1.0, 1.3, 1.7] {
        checks.push(one(move || {
            let seed = eta24();
            let b = CheckRecord::new("series against kernel quadrature", "kernel representation")
                .input("seed", "eta24")
                .input("alpha", alpha)
                .input("delta", d);
            let run = || -> ttdeform::Result<f64> {
                let cal = calibrate_kernel(seed.weight(), alpha, &quad)?;
                let k = kernel_oracle(&seed, alpha, d, &cal, &quad)?;
                let s = deform_eval(&seed, &DeformParams::raw(alpha)?, pt(d, 0.0), &SeriesOptions::new(1e-16))?.value;
                Ok((k - s).norm() / s.norm())
            };
            b.result(run(), 1e-6, Comparison::Below)
        }));
    }
    checks
}

fn thm1a() -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    let cases: [(HoloSeed, &str, f64, [Complex64; 3]); 2] = [
        (theta3(), "theta3", 0.3, [c(1.2, 0.0), c(2.0, 0.0), c(0.25, 3.0)]),
        (eta24(), "eta24", 0.2, [c(13.0, 0.0), c(8.0, 1.0), c(6.0, 0.0)]),
    ];
    for (seed, name, alpha, ss) in cases {
        for s in ss {
            let seed = seed.clone();
            checks.push(one(move || {
                let b = CheckRecord::new("R^alpha = I^alpha R^0", "Mellin product identity")
                    .input("seed", name)
                    .input("alpha", alpha)
                    .complex("s", s);
                match product_identity(&seed, alpha, s, 1e-11) {
                    Ok(p) => b.complex("r0", p.r0).complex("r_alpha", p.r_alpha).below(p.residual, 1e-5),
                    Err(e) => b.failed(1e-5, Comparison::Below, e),
                }
            }));
        }
    }
    let triples = [
        (0.5, c(0.25, 3.0), 0.3),
        (0.5, c(1.2, 0.0), 0.2),
        (12.0, c(13.0, 0.0), 0.2),
        (12.0, c(6.0, 2.0), 0.5),
        (0.5, c(2.0, 0.0), 1.0),
        (-0.5, c(0.7, 1.0), 0.1),
    ];
    for (k, s, alpha) in triples {
        checks.push(one(move || {
            let b = CheckRecord::new("I^alpha(k, s) = I^alpha(k, k - s)", "multiplier reflection")
                .input("k", k)
                .complex("s", s)
                .input("alpha", alpha);
            let run = || -> ttdeform::Result<f64> {
                let a = i_alpha(k, s, alpha, MultiplierRoute::Quadrature)?.value;
                let r = i_alpha(k, k - s, alpha, MultiplierRoute::Quadrature)?.value;
                Ok((a - r).norm() / a.norm())
            };
            b.result(run(), 1e-8, Comparison::Below)
        }));
    }
    for alpha in [0.2, 0.3, 0.5, 1.0] {
        for (k, s) in [(0.5, c(1.2, 0.0)), (0.5, c(0.25, 3.0)), (-0.5, c(2.3, -0.5))] {
            checks.push(one(move || {
                let b = CheckRecord::new("closed form against quadrature for I^alpha", "multiplier routes")
                    .input("k", k)
                    .complex("s", s)
                    .input("alpha", alpha);
                let run = || -> ttdeform::Result<f64> {
                    let q = i_alpha(k, s, alpha, MultiplierRoute::Quadrature)?.value;
                    let cf = i_alpha(k, s, alpha, MultiplierRoute::ClosedForm)?.value;
                    Ok((q - cf).norm() / q.norm())
                };
                b.result(run(), 1e-7, Comparison::Below)
            }));
        }
    }
    checks
}

fn zero_inheritance() -> Vec<Check> {
    vec![one(|| {
        let alpha = 0.3;
        let seed = theta3();
        let b = CheckRecord::new("|R^alpha(s0)| against |R^alpha(s0 + 0.2)|", "zero inheritance")
            .input("seed", "theta3")
            .input("alpha", alpha);
        let run = || -> ttdeform::Result<(Complex64, f64, f64)> {
            let s0 = locate_zero(&seed, 0.25, 7.0, 7.1, 1e-10)?;
            let at = deformed_mellin(&seed, alpha, s0, 1e-12)?.r.norm();
            let off = deformed_mellin(&seed, alpha, s0 + 0.2, 1e-12)?.r.norm();
            Ok((s0, at, off))
        };
        match run() {
            Ok((s0, at, off)) => b
                .complex("s0", s0)
                .input("at_zero", at)
                .input("shifted", off)
                .below(at / off, 1e-3),
            Err(e) => b.failed(1e-3, Comparison::Below, e),
        }
    })]
}

const TORUS_POINTS: [(f64, f64); 8] =
    [(1.0, 0.3), (0.9, 0.2), (0.6, -0.4), (1.7, 0.45), (0.8, 0.0), (1.2, -0.25), (0.5, 0.1), (2.2, 0.35)];

fn torus_invariance() -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    for alpha in [0.02, 0.05] {
        for (a, bb) in TORUS_POINTS {
            checks.push(Box::new(move || {
                let d = pt(a, bb);
                let b = |what: &str| {
                    CheckRecord::new(what, "torus invariance")
                        .input("seed", "ising-Z")
                        .input("alpha", alpha)
                        .complex("delta", d.as_complex())
                };
                let run = || -> ttdeform::Result<(f64, f64)> {
                    let z = ising_z(ttdeform::spectra::builtin::ISING_DEFAULT_ORDER)?;
                    st_residuals(&z, alpha, d, RealVariant::Invariant, 1e-15)
                };
                match run() {
                    Ok((s, t)) => vec![b("S residual").below(s, 1e-8), b("T residual").below(t, 1e-8)],
                    Err(e) => vec![
                        b("S residual").failed(1e-8, Comparison::Below, e.clone()),
                        b("T residual").failed(1e-8, Comparison::Below, e),
                    ],
                }
            }));
        }
    }
    checks
}

fn dgh_oracle() -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    for alpha in [0.02, 0.05] {
        for (a, bb) in [(1.0, 0.0), (0.8, 0.3)] {
            checks.push(one(move || {
                let d = pt(a, bb);
                let b = CheckRecord::new("series against DGH kernel quadrature", "hyperbolic kernel")
                    .input("seed", "ising-Z")
                    .input("alpha", alpha)
                    .complex("delta", d.as_complex());
                let run = || -> ttdeform::Result<f64> {
                    let z = ising_z(ttdeform::spectra::builtin::ISING_DEFAULT_ORDER)?;
                    let f = invariant_real_evaluator(&z, 1e-15)?;
                    let o = dgh_kernel_oracle(&f, alpha, d, &DghQuad::default())?;
                    let s = ttdeform::deform_real::deform_eval_real(
                        &z,
                        &DeformParams::unit(alpha)?,
                        d,
                        RealVariant::Invariant,
                        &SeriesOptions::new(1e-15),
                    )?
                    .value;
                    Ok((o.value - s).norm() / s.norm())
                };
                b.result(run(), 1e-4, Comparison::Below)
            }));
        }
    }
    checks.push(one(|| {
        let b = CheckRecord::new("DGH kernel on F = 1", "hyperbolic kernel").input("alpha", 0.05);
        let run = || -> ttdeform::Result<f64> {
            let v = dgh_kernel_oracle(|_| Ok(c(1.0, 0.0)), 0.05, pt(1.0, 0.0), &DghQuad::default())?;
            Ok((v.normalization - 1.0).abs())
        };
        b.result(run(), 1e-8, Comparison::Below)
    }));
    checks
}


fn eisenstein_at(s: Complex64, m: u32) -> impl Fn(ModulusPoint) -> ttdeform::Result<Complex64> + Sync {
    move |x| Ok(eisenstein_real(s, x, LatticeCutoff::new(m)?)?.value)
}

fn maass_flow() -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    for s in [2.0, 3.0] {
        for (a, bb) in [(1.1, 0.2), (0.9, -0.35)] {
            checks.push(one(move || {
                let s = c(s, 0.0);
                let d = pt(a, bb);
                let b = CheckRecord::new("Laplacian eigenvalue of E_s", "Maass eigenfunction")
                    .complex("s", s)
                    .complex("delta", d.as_complex());
                let run = || -> ttdeform::Result<f64> {
                    let f = eisenstein_at(s, 20);
                    let lap = laplacian_fd(&f, d, 1e-3)?;
                    let v = f(d)?;
                    Ok((lap - s * (1.0 - s) * v).norm() / v.norm())
                };
                b.result(run(), 1e-5, Comparison::Below)
            }));
        }
    }
    checks.push(one(|| {
        let s = c(0.5, 2.0);
        let a = FlowFactor::new(s, 0.3);
        let b = FlowFactor::new(s, 0.45);
        let rec = CheckRecord::new("flow by 0.3 then 0.45 equals flow by 0.75", "flow semigroup").complex("s", s);
        match a.then(&b) {
            Ok(ab) => rec.below((a.factor * b.factor - ab.factor).norm().max((ab.factor - FlowFactor::new(s, 0.75).factor).norm()), 1e-14),
            Err(e) => rec.failed(1e-14, Comparison::Below, e),
        }
    }));
    checks
}

fn heat_flow() -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    // the residual of (F^a - F)/a + Lap F / 4 must shrink like a
    let flows: [(&str, Complex64, ModulusPoint); 2] =
        [("E_s", c(2.0, 0.0), pt(1.1, 0.2)), ("delta1^s", c(2.0, 0.0), pt(1.0, 0.0))];
    for (name, s, d) in flows {
        checks.push(one(move || {
            let b = CheckRecord::new("DGH flow against exp(-s(1-s) alpha / 4)", "heat flow")
                .input("function", name)
                .complex("s", s)
                .complex("delta", d.as_complex());
            let run = || -> ttdeform::Result<Vec<(f64, f64, Complex64)>> {
                let quad = DghQuad::default();
                [0.02, 0.01]
                    .iter()
                    .map(|&alpha| {
                        let h = if name == "E_s" {
                            heat_flow_residual(eisenstein_at(s, 20), alpha, d, 1e-3, &quad)?
                        } else {
                            heat_flow_residual(|x: ModulusPoint| Ok(c(x.re(), 0.0).powc(s)), alpha, d, 1e-3, &quad)?
                        };
                        Ok((alpha, h.residual, h.measured_rate))
                    })
                    .collect()
            };
            match run() {
                Ok(v) => {
                    let slope = loglog_slope(&v.iter().map(|r| (r.0, r.1)).collect::<Vec<_>>());
                    let mut rec = b
                        .input("alphas", v.iter().map(|r| r.0).collect::<Vec<_>>())
                        .input("residuals", v.iter().map(|r| r.1).collect::<Vec<_>>())
                        .input("measured_rate", cx_value(v[v.len() - 1].2))
                        .input("expected_rate", -0.25)
                        .input("slope", slope)
                        .check((slope - 1.0).abs(), 0.2, Comparison::AtMost);
                    if !rec.pass {
                        rec = rec.with_note("residual does not shrink with alpha; see measured_rate");
                    }
                    rec
                }
                Err(e) => b.failed(0.2, Comparison::AtMost, e),
            }
        }));
    }
    checks.push(one(|| {
        let b = CheckRecord::new("DGH flow of a constant", "heat flow").input("alpha", 0.02);
        let run = || heat_flow_residual(|_| Ok(c(1.0, 0.0)), 0.02, pt(1.0, 0.0), 1e-3, &DghQuad::default());
        b.result(run().map(|h| h.residual), DghQuad::default().tol, Comparison::Below)
    }));
    checks.push(one(|| {
            let s = c(2.0, 0.0);
            let alpha = 0.02;
            let b = CheckRecord::new("DGH eigenvalue on delta1^s against 1 - s(1-s) alpha", "heat flow")
                .complex("s", s)
                .input("alpha", alpha);
            match dgh_monomial_multiplier(s, alpha) {
                Ok(m) => {
                    let lin = 1.0 - s * (1.0 - s) * alpha;
                    b.complex("multiplier", m).below((m - lin).norm() / (alpha * alpha), 5.0)
                }
                Err(e) => b.failed(5.0, Comparison::Below, e),
            }
        }));
    checks
}

fn jacobi() -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    for d in [0.7, 1.0, 2.0] {
        checks.push(one(move || {
            CheckRecord::new("deformed theta3 inversion", "Jacobi theta")
                .input("alpha", 0.1)
                .input("delta", d)
                .result(s_residual(&theta3(), 0.1, pt(d, 0.0), 1e-16), 1e-11, Comparison::Below)
        }));
    }
    checks.push(one(|| {
        CheckRecord::new("deformed Jacobi identity, elliptic variable outside", "Jacobi theta")
            .input("alpha", 0.1)
            .input("z", 0.2)
            .input("delta", 1.1)
            .result(jacobi_residual(c(0.2, 0.0), 0.1, pt(1.1, 0.0), 1e-16), 1e-10, Comparison::Below)
    }));
    checks.push(one(|| {
        CheckRecord::new("deformed Jacobi identity, shift inside the deformation", "Jacobi theta")
            .input("alpha", 0.1)
            .input("z", 0.2)
            .input("delta", 1.1)
            .result(shifted_jacobi_residual(c(0.2, 0.0), 0.1, pt(1.1, 0.0), 1e-16), 1e-10, Comparison::Below)
    }));
    checks
}

fn partition() -> Vec<Check> {
    let alpha = 0.1;
    let mut checks: Vec<Check> = Vec::new();
    for (a, bb) in [(1.0, 0.0), (0.7, 0.2), (1.5, -0.3)] {
        checks.push(one(move || {
            let d = pt(a, bb);
            CheckRecord::new("partition sum inversion", "partition function")
                .input("alpha", alpha)
                .complex("delta", d.as_complex())
                .result(s_residual(&eta_inverse(), alpha, d, 1e-15), 1e-8, Comparison::Below)
        }));
    }
    checks.push(one(move || {
        let b = CheckRecord::new("admissible window edges", "partition function").input("alpha", alpha);
        match seed_window(&eta_inverse(), alpha) {
            Ok(w) => {
                let lo = PI * alpha / 3.0;
                b.input("lo", w.lo)
                    .input("hi", w.hi)
                    .below(((w.lo - lo) / lo).abs().max((w.hi * lo - 1.0).abs()), 1e-14)
            }
            Err(e) => b.failed(1e-14, Comparison::Below, e),
        }
    }));
    checks.push(one(move || {
        let d = pt(0.05, 0.0);
        let b = CheckRecord::new("evaluation left of the window is refused", "partition function")
            .input("alpha", alpha)
            .complex("delta", d.as_complex());
        let r = deform_eval(&eta_inverse(), &DeformParams::unit(alpha).expect("alpha > 0"), d, &SeriesOptions::new(1e-12));
        match r {
            Err(Error::OutsideWindow { .. }) => b.check(0.0, 0.0, Comparison::AtMost),
            Err(e) => b.failed(0.0, Comparison::AtMost, e),
            Ok(v) => b.check(1.0, 0.0, Comparison::AtMost).with_note(format!("returned {}", v.value)),
        }
    }));
    checks.push(Box::new(move || {
        let b = |what: &str| CheckRecord::new(what, "Hagedorn point").input("seed", "eta-inverse").input("alpha", alpha);
        match hagedorn_scan(&eta_inverse(), alpha, &FitWindow::default()) {
            Ok(fit) => {
                let want = 3.0 / (PI * alpha);
                vec![
                    b("critical point 3/(pi alpha)").input("delta_c", fit.delta_c).below((fit.delta_c / want - 1.0).abs(), 1e-12),
                    b("power-law exponent near the critical point")
                        .input("exponent", fit.exponent)
                        .check((fit.exponent + 0.5).abs(), 0.05, Comparison::AtMost),
                ]
            }
            Err(e) => vec![
                b("critical point 3/(pi alpha)").failed(1e-12, Comparison::Below, e.clone()),
                b("power-law exponent near the critical point").failed(0.05, Comparison::AtMost, e),
            ],
        }
    }));
    checks
}

fn eisenstein_holo() -> Vec<Check> {
    let (k, alpha, d, m) = (4, 0.1, pt(1.2, 0.0), 40);
    vec![
        Box::new(move || {
            let b = |what: &str| {
                CheckRecord::new(what, "holomorphic Eisenstein")
                    .input("k", k)
                    .input("alpha", alpha)
                    .input("delta", 1.2)
                    .input("lattice", m)
            };
            match holo_eisenstein_residuals(k, alpha, d, LatticeCutoff { m }) {
                Ok((s, t)) => vec![
                    b("S residual").below(s, 1e-6),
                    b("T residual stays large").check(t, 1e-3, Comparison::Above),
                ],
                Err(e) => vec![
                    b("S residual").failed(1e-6, Comparison::Below, e.clone()),
                    b("T residual stays large").failed(1e-3, Comparison::Above, e),
                ],
            }
        }),
        one(move || {
            let b = CheckRecord::new("axis terms are undeformed", "holomorphic Eisenstein").input("k", k).input("alpha", alpha);
            let run = || -> ttdeform::Result<f64> {
                let mut worst = 0.0f64;
                for j in 1..=6i64 {
                    for (mm, nn) in [(j, 0), (-j, 0), (0, j), (0, -j)] {
                        let z = mm as f64 + c(0.0, nn as f64) * d.as_complex();
                        let t = holo_eisenstein_term(k, alpha, d, mm, nn)?;
                        worst = worst.max((t - z.powi(-(k as i32))).norm());
                    }
                }
                Ok(worst)
            };
            b.result(run(), 0.0, Comparison::AtMost)
        }),
    ]
}

/// Weighted and residue prefactors on synthetic |eta^k|^2 seeds.
fn real_weighted() -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    let cases = [(1, RealVariant::Weighted, "weighted"), (2, RealVariant::Residue, "residue"), (2, RealVariant::Weighted, "weighted")];
    for (k, variant, vname) in cases {
        checks.push(Box::new(move || {
            let d = pt(0.9, 0.2);
            let b = |what: &str| {
                CheckRecord::new(what, "real-analytic covariance")
                    .input("seed", format!("|eta^{k}|^2"))
                    .input("variant", vname)
                    .input("alpha", 0.05)
                    .complex("delta", d.as_complex())
            };
            let run = || -> ttdeform::Result<(f64, f64)> {
                let seed = synthetic_hermitian_seed(k, 60.0)?;
                st_residuals(&seed, 0.05, d, variant, 1e-15)
            };
            match run() {
                Ok((s, t)) => vec![b("S residual").below(s, 1e-8), b("T residual").below(t, 1e-8)],
                Err(e) => vec![
                    b("S residual").failed(1e-8, Comparison::Below, e.clone()),
                    b("T residual").failed(1e-8, Comparison::Below, e),
                ],
            }
        }));
    }
    checks
}

fn checks_for(suite: &str) -> Vec<Check> {
    match suite {
        "s-invariance" => s_invariance(),
        "alpha-limit" => alpha_limit(),
        "kernel-oracle" => kernel_checks(),
        "thm1a" => thm1a(),
        "zero-inheritance" => zero_inheritance(),
        "torus-invariance" => torus_invariance(),
        "dgh-oracle" => dgh_oracle(),
        "maass-flow" => maass_flow(),
        "heat-flow" => heat_flow(),
        "jacobi" => jacobi(),
        "partition" => partition(),
        "eisenstein-holo" => eisenstein_holo(),
        "real-weighted" => real_weighted(),
        _ => Vec::new(),
    }
}

/// Runs a suite by name (`all` runs every suite). `None` for unknown names.
pub fn run_suite(name: &str, environment: Environment) -> Option<VerificationReport> {
    let names: Vec<&str> = if name == "all" { SUITES.to_vec() } else { vec![canonical(name)?] };
    let checks: Vec<Check> = names.iter().flat_map(|n| checks_for(n)).collect();
    let records: Vec<CheckRecord> = checks.par_iter().map(|f| f()).collect::<Vec<_>>().into_iter().flatten().collect();
    Some(VerificationReport::new(name, records, environment))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        for n in SUITES {
            assert_eq!(canonical(n), Some(n));
        }
        assert_eq!(canonical("thm1"), Some("s-invariance"));
        assert_eq!(canonical("thm2a"), Some("torus-invariance"));
        assert_eq!(canonical("nope"), None);
        assert!(criterion_suites(0).is_none() && criterion_suites(11).is_none());
        assert_eq!(criterion_suites(6), Some(&["torus-invariance", "dgh-oracle"][..]));
    }

    #[test]
    fn slope_of_a_power() {
        let pts: Vec<(f64, f64)> = [1e-2, 1e-3, 1e-4].iter().map(|&a: &f64| (a, 3.0 * a * a)).collect();
        assert!((loglog_slope(&pts) - 2.0).abs() < 1e-12);
    }
}
