//! Undeformed seed forms: exponent spectra, built-in classical forms and
//! direct evaluation of their q-series.

pub mod builtin;
pub mod partitions;
pub mod seed_json;

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkit::{Precision, SumAccumulator};

pub use builtin::{builtin_seed, eta24, eta_inverse, eta_power, hermitian_square, ising_z, theta3, BUILTIN_NAMES};
pub use partitions::{eta24_coeffs, partition_coeffs};

/// A point δ = δ₁ + iδ₂ of the right half-plane, with q = e^{−2πδ}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulusPoint {
    d1: f64,
    d2: f64,
}

impl ModulusPoint {
    pub fn new(d1: f64, d2: f64) -> Result<Self> {
        if !d1.is_finite() || !d2.is_finite() {
            return Err(Error::InvalidArgument("modulus must be finite".into()));
        }
        if d1 <= 0.0 {
            return Err(Error::InvalidArgument(format!("Re delta = {d1} must be positive")));
        }
        Ok(Self { d1, d2 })
    }

    pub fn real(d1: f64) -> Result<Self> {
        Self::new(d1, 0.0)
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn re(&self) -> f64 {
        self.d1
    }

    pub fn im(&self) -> f64 {
        self.d2
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.d1, self.d2)
    }

    /// 1/δ
    pub fn s_image(&self) -> Self {
        let n = self.d1 * self.d1 + self.d2 * self.d2;
        Self { d1: self.d1 / n, d2: -self.d2 / n }
    }

    /// δ + i
    pub fn t_image(&self) -> Self {
        Self { d1: self.d1, d2: self.d2 + 1.0 }
    }
}

/// One exponent of a holomorphic spectrum with its coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub lambda: f64,
    pub a: Complex64,
}

#[derive(Debug, Clone)]
enum Spectrum {
    /// λ = j²/2, a = 1 for j = 0 and 2 otherwise.
    Theta3,
    /// Tabulated terms; `complete` marks a genuinely finite series.
    Table { terms: Arc<Vec<Term>>, complete: bool },
}

/// Holomorphic seed: weight `k` and an increasing exponent spectrum.
#[derive(Debug, Clone)]
pub struct HoloSeed {
    name: String,
    weight: f64,
    covariant: bool,
    start: usize,
    spectrum: Spectrum,
}

impl HoloSeed {
    pub(crate) fn theta3_spectrum(name: &str, weight: f64) -> Self {
        Self { name: name.into(), weight, covariant: true, start: 0, spectrum: Spectrum::Theta3 }
    }

    /// Builds a seed from a table of terms; exponents must be strictly increasing.
    pub fn from_terms(name: &str, weight: f64, terms: Vec<Term>, complete: bool, covariant: bool) -> Result<Self> {
        Self::from_shared(name, weight, Arc::new(terms), complete, covariant)
    }

    pub(crate) fn from_shared(
        name: &str,
        weight: f64,
        terms: Arc<Vec<Term>>,
        complete: bool,
        covariant: bool,
    ) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::SeedFormat("a seed needs at least one term".into()));
        }
        if !weight.is_finite() {
            return Err(Error::SeedFormat("weight must be finite".into()));
        }
        for (i, t) in terms.iter().enumerate() {
            if !t.lambda.is_finite() || !t.a.re.is_finite() || !t.a.im.is_finite() {
                return Err(Error::SeedFormat(format!("term {i} is not finite")));
            }
        }
        if let Some(i) = terms.windows(2).position(|w| w[1].lambda <= w[0].lambda) {
            return Err(Error::SeedFormat(format!("exponents must increase strictly (term {})", i + 1)));
        }
        Ok(Self {
            name: name.into(),
            weight,
            covariant,
            start: 0,
            spectrum: Spectrum::Table { terms, complete },
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Whether the seed satisfies F(1/δ) = δ^k F(δ).
    pub fn is_covariant(&self) -> bool {
        self.covariant
    }

    /// Smallest exponent Δ.
    pub fn delta(&self) -> f64 {
        self.term(0).ok().flatten().map(|t| t.lambda).unwrap_or(f64::INFINITY)
    }

    /// Term `j`; `Ok(None)` past the end of a finite series. Reading past
    /// the tabulated part of an infinite series is an error.
    pub fn term(&self, j: usize) -> Result<Option<Term>> {
        let j = j + self.start;
        match &self.spectrum {
            Spectrum::Theta3 => {
                let n = j as f64;
                let a = if j == 0 { 1.0 } else { 2.0 };
                Ok(Some(Term { lambda: 0.5 * n * n, a: Complex64::new(a, 0.0) }))
            }
            Spectrum::Table { terms, complete } => match terms.get(j) {
                Some(t) => Ok(Some(*t)),
                None if *complete => Ok(None),
                None => Err(Error::OrderOutOfRange { order: j, max: terms.len() }),
            },
        }
    }

    /// The seed with its first `count` terms removed (no longer covariant).
    pub fn drop_leading(&self, count: usize) -> Self {
        let mut s = self.clone();
        s.start += count;
        s.covariant = false;
        s.name = format!("{}-minus-{}", self.name, count);
        s
    }

    /// Terms with λ ≤ 0, which Dirichlet-side operations must treat separately.
    pub fn nonpositive_terms(&self) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        let mut j = 0;
        while let Some(t) = self.term(j)? {
            if t.lambda > 0.0 {
                break;
            }
            out.push(t);
            j += 1;
        }
        Ok(out)
    }

    /// For the θ₃ spectrum (λ = j²/2, a = 2 beyond j = 0) the index of the
    /// first retained j, which lets Dirichlet sums use a closed-form tail.
    pub fn theta3_start(&self) -> Option<usize> {
        matches!(self.spectrum, Spectrum::Theta3).then_some(self.start)
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }
}

/// One spin component of a real-analytic seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealTerm {
    pub lambda: f64,
    pub p: i64,
    pub a: Complex64,
}

/// All terms sharing one exponent λ.
#[derive(Debug, Clone, PartialEq)]
pub struct Shell {
    pub lambda: f64,
    pub spins: Vec<(i64, Complex64)>,
}

/// Real-analytic seed Σ a e^{−2πλδ₁ + 2πipδ₂} of weight `k`.
#[derive(Debug, Clone)]
pub struct RealSeed {
    name: String,
    weight: f64,
    shells: Arc<Vec<Shell>>,
}

impl RealSeed {
    /// Groups terms into shells of equal λ and checks Hermitian symmetry
    /// a(λ, −p) = conj a(λ, p).
    pub fn from_terms(name: &str, weight: f64, mut terms: Vec<RealTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::SeedFormat("a seed needs at least one term".into()));
        }
        for (i, t) in terms.iter().enumerate() {
            if !t.lambda.is_finite() || !t.a.re.is_finite() || !t.a.im.is_finite() {
                return Err(Error::SeedFormat(format!("term {i} is not finite")));
            }
        }
        terms.sort_by(|x, y| x.lambda.total_cmp(&y.lambda).then(x.p.cmp(&y.p)));
        let mut shells: Vec<Shell> = Vec::new();
        for t in terms {
            match shells.last_mut() {
                Some(sh) if sh.lambda == t.lambda => {
                    if let Some(last) = sh.spins.last_mut().filter(|s| s.0 == t.p) {
                        last.1 += t.a;
                    } else {
                        sh.spins.push((t.p, t.a));
                    }
                }
                _ => shells.push(Shell { lambda: t.lambda, spins: vec![(t.p, t.a)] }),
            }
        }
        for sh in &shells {
            for &(p, a) in &sh.spins {
                let partner = sh.spins.iter().find(|s| s.0 == -p).map(|s| s.1);
                let ok = match partner {
                    Some(b) => (b - a.conj()).norm() <= 1e-12 * a.norm().max(1e-300),
                    None => false,
                };
                if !ok {
                    return Err(Error::SeedFormat(format!(
                        "Hermitian partner missing or mismatched for lambda = {}, p = {p}",
                        sh.lambda
                    )));
                }
            }
        }
        Ok(Self { name: name.into(), weight, shells: Arc::new(shells) })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn delta(&self) -> f64 {
        self.shells[0].lambda
    }

    pub fn shells(&self) -> &[Shell] {
        &self.shells
    }

    /// All terms, ordered by (λ, p).
    pub fn terms(&self) -> impl Iterator<Item = RealTerm> + '_ {
        self.shells
            .iter()
            .flat_map(|sh| sh.spins.iter().map(move |&(p, a)| RealTerm { lambda: sh.lambda, p, a }))
    }

    pub fn max_spin(&self) -> i64 {
        self.shells.iter().flat_map(|s| s.spins.iter().map(|x| x.0.abs())).max().unwrap_or(0)
    }
}

/// Either kind of seed, as returned by name lookup or JSON parsing.
#[derive(Debug, Clone)]
pub enum Seed {
    Holo(HoloSeed),
    Real(RealSeed),
}

impl Seed {
    pub fn name(&self) -> &str {
        match self {
            Seed::Holo(s) => s.name(),
            Seed::Real(s) => s.name(),
        }
    }

    pub fn weight(&self) -> f64 {
        match self {
            Seed::Holo(s) => s.weight(),
            Seed::Real(s) => s.weight(),
        }
    }

    pub fn delta(&self) -> f64 {
        match self {
            Seed::Holo(s) => s.delta(),
            Seed::Real(s) => s.delta(),
        }
    }

    pub fn as_holo(&self) -> Result<&HoloSeed> {
        match self {
            Seed::Holo(s) => Ok(s),
            Seed::Real(s) => Err(Error::InvalidArgument(format!("seed '{}' is not holomorphic", s.name()))),
        }
    }

    pub fn as_real(&self) -> Result<&RealSeed> {
        match self {
            Seed::Real(s) => Ok(s),
            Seed::Holo(s) => Err(Error::InvalidArgument(format!("seed '{}' is not real-analytic", s.name()))),
        }
    }
}

/// Series value with its truncation estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: Complex64,
    pub tail_estimate: f64,
    pub terms_used: usize,
}

/// Truncation controls shared by all series evaluators.
#[derive(Debug, Clone, Copy)]
pub struct SeriesOptions {
    /// Relative tolerance on the tail.
    pub tol: f64,
    pub max_terms: usize,
    pub precision: Precision,
}

impl SeriesOptions {
    pub fn new(tol: f64) -> Self {
        Self { tol, max_terms: 50_000, precision: Precision::Binary64 }
    }
}

/// One summand handed to [`sum_series`]: its value and the log of its
/// exponential factor, from which the decay ratio to the next term is read.
#[derive(Debug, Clone, Copy)]
pub struct SeriesTerm {
    pub value: Complex64,
    pub log_decay: f64,
}

const TAIL_WINDOW: usize = 4;
const TAIL_SAFETY: f64 = 4.0;

/// Sums `next(0), next(1), ...` until the tail bound drops below
/// `tol·|sum|`. The bound is the largest of the last few magnitudes times
/// the geometric factor r/(1−r), with r the ratio of the last two
/// exponential factors.
pub fn sum_series<F>(mut next: F, opts: &SeriesOptions) -> Result<EvalResult>
where
    F: FnMut(usize) -> Result<Option<SeriesTerm>>,
{
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let mut acc = SumAccumulator::new(opts.precision);
    let mut recent = [0.0f64; TAIL_WINDOW];
    let mut prev_log: Option<f64> = None;
    let mut last_tail = f64::INFINITY;
    for j in 0..opts.max_terms {
        let term = match next(j) {
            Ok(Some(t)) => t,
            Ok(None) => {
                return Ok(EvalResult { value: acc.value(), tail_estimate: 0.0, terms_used: j });
            }
            Err(Error::OrderOutOfRange { .. }) => {
                return Err(Error::ToleranceUnreachable { terms: j, estimate: last_tail, tol: opts.tol });
            }
            Err(e) => return Err(e),
        };
        acc.add(term.value).map_err(|_| Error::NonFinite { index: j })?;
        recent[j % TAIL_WINDOW] = term.value.norm();
        if let Some(pl) = prev_log {
            let r = (term.log_decay - pl).exp();
            if r < 1.0 && j + 1 >= 2 {
                let m = recent.iter().cloned().fold(0.0, f64::max);
                last_tail = TAIL_SAFETY * m * r / (1.0 - r);
                if last_tail <= opts.tol * acc.value().norm() || m == 0.0 && j >= TAIL_WINDOW {
                    return Ok(EvalResult { value: acc.value(), tail_estimate: last_tail, terms_used: j + 1 });
                }
            }
        }
        prev_log = Some(term.log_decay);
    }
    Err(Error::ToleranceUnreachable { terms: opts.max_terms, estimate: last_tail, tol: opts.tol })
}

/// Direct evaluation Σ aⱼ e^{−2πλⱼδ} of a holomorphic seed.
pub fn eval_holo(seed: &HoloSeed, delta: ModulusPoint, opts: &SeriesOptions) -> Result<EvalResult> {
    let d = delta.as_complex();
    let two_pi = 2.0 * std::f64::consts::PI;
    sum_series(
        |j| {
            Ok(seed.term(j)?.map(|t| {
                let e = -two_pi * t.lambda * d;
                SeriesTerm { value: t.a * e.exp(), log_decay: e.re }
            }))
        },
        opts,
    )
}

/// Direct evaluation Σ a e^{−2πλδ₁ + 2πipδ₂} of a real-analytic seed.
pub fn eval_real(seed: &RealSeed, delta: ModulusPoint, opts: &SeriesOptions) -> Result<EvalResult> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let phases = PhaseTable::new(delta.im(), seed.max_spin());
    let shells = seed.shells();
    sum_series(
        |j| {
            let Some(sh) = shells.get(j) else { return Ok(None) };
            let e = -two_pi * sh.lambda * delta.re();
            let mut acc = Complex64::new(0.0, 0.0);
            for &(p, a) in &sh.spins {
                acc += a * phases.get(p);
            }
            Ok(Some(SeriesTerm { value: acc * e.exp(), log_decay: e }))
        },
        opts,
    )
}

/// e^{2πipδ₂} for |p| ≤ pmax, built from direct evaluations to avoid
/// error growth in long products.
pub struct PhaseTable {
    pmax: i64,
    table: Vec<Complex64>,
}

impl PhaseTable {
    pub fn new(d2: f64, pmax: i64) -> Self {
        let table = (-pmax..=pmax)
            .map(|p| {
                // reduce p·δ₂ mod 1 before scaling to keep the argument small
                let x = (p as f64 * d2).rem_euclid(1.0);
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * x)
            })
            .collect();
        Self { pmax, table }
    }

    pub fn get(&self, p: i64) -> Complex64 {
        self.table[(p + self.pmax) as usize]
    }
}

/// Direct evaluation of either kind of seed.
pub fn eval_seed(seed: &Seed, delta: ModulusPoint, tol: f64) -> Result<EvalResult> {
    let opts = SeriesOptions::new(tol);
    match seed {
        Seed::Holo(s) => eval_holo(s, delta, &opts),
        Seed::Real(s) => eval_real(s, delta, &opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_images() {
        let d = ModulusPoint::new(1.7, 0.3).unwrap();
        let s = d.s_image();
        let z = 1.0 / d.as_complex();
        assert!((s.as_complex() - z).norm() < 1e-16);
        assert_eq!(d.t_image().im(), 1.3);
        assert!(ModulusPoint::new(0.0, 1.0).is_err());
        assert!(ModulusPoint::new(-1.0, 0.0).is_err());
    }

    #[test]
    fn theta3_at_one() {
        let r = eval_holo(&theta3(), ModulusPoint::real(1.0).unwrap(), &SeriesOptions::new(1e-15)).unwrap();
        assert!((r.value.re - 1.086_434_811_213_308).abs() < 1e-9);
        assert!(r.terms_used <= 6);
    }

    #[test]
    fn theta3_inversion() {
        let d = ModulusPoint::real(0.7).unwrap();
        let opts = SeriesOptions::new(1e-16);
        let a = eval_holo(&theta3(), d.s_image(), &opts).unwrap().value;
        let b = eval_holo(&theta3(), d, &opts).unwrap().value * 0.7f64.sqrt();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn eta24_covariance_between_one_and_two() {
        let s = eta24();
        let opts = SeriesOptions::new(1e-16);
        let f2 = eval_holo(&s, ModulusPoint::real(2.0).unwrap(), &opts).unwrap().value;
        let fh = eval_holo(&s, ModulusPoint::real(0.5).unwrap(), &opts).unwrap().value;
        assert!((fh - f2 * 2f64.powi(12)).norm() < 1e-10 * fh.norm());
    }

    #[test]
    fn finite_seed_ends_with_zero_tail() {
        let s = HoloSeed::from_terms("one", 0.0, vec![Term { lambda: 1.0, a: Complex64::new(1.0, 0.0) }], true, false)
            .unwrap();
        let r = eval_holo(&s, ModulusPoint::real(1.0).unwrap(), &SeriesOptions::new(1e-12)).unwrap();
        assert_eq!(r.tail_estimate, 0.0);
        assert!((r.value.re - (-2.0 * std::f64::consts::PI).exp()).abs() < 1e-17);
    }

    #[test]
    fn truncated_table_reports_unreachable_tolerance() {
        let terms = (0..3).map(|n| Term { lambda: n as f64, a: Complex64::new(1.0, 0.0) }).collect();
        let s = HoloSeed::from_terms("cut", 0.0, terms, false, false).unwrap();
        let r = eval_holo(&s, ModulusPoint::real(0.01).unwrap(), &SeriesOptions::new(1e-12));
        assert!(matches!(r, Err(Error::ToleranceUnreachable { .. })));
    }

    #[test]
    fn non_increasing_spectrum_rejected() {
        let t = |l: f64| Term { lambda: l, a: Complex64::new(1.0, 0.0) };
        assert!(HoloSeed::from_terms("bad", 0.0, vec![t(1.0), t(1.0)], true, false).is_err());
    }

    #[test]
    fn hermitian_check() {
        let t = |p: i64, im: f64| RealTerm { lambda: 1.0, p, a: Complex64::new(1.0, im) };
        assert!(RealSeed::from_terms("ok", 0.0, vec![t(1, 0.5), t(-1, -0.5)]).is_ok());
        assert!(RealSeed::from_terms("bad", 0.0, vec![t(1, 0.5), t(-1, 0.5)]).is_err());
        assert!(RealSeed::from_terms("lonely", 0.0, vec![t(2, 0.0)]).is_err());
    }
}
