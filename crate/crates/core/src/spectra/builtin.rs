//! Built-in seeds: θ₃, 1/η, η²⁴, the Ising partition function, plus
//! generators for powers of η and Hermitian squares |F|².

use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use super::partitions::{distinct_parts, euler_product_power, odd_distinct_product, partition_f64};
use super::{HoloSeed, RealSeed, RealTerm, Seed, Term};
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: [&str; 4] = ["theta3", "eta-inverse", "eta24", "ising-Z"];
pub const ISING_DEFAULT_ORDER: usize = 64;

const ETA_INVERSE_TERMS: usize = 12_000;
const ETA24_TERMS: usize = 3_000;

/// θ₃(δ) = Σ_{n∈ℤ} e^{−πn²δ}, weight 1/2.
pub fn theta3() -> HoloSeed {
    HoloSeed::theta3_spectrum("theta3", 0.5)
}

/// 1/η = q^{−1/24} Σ P(n) qⁿ, weight −1/2.
pub fn eta_inverse() -> HoloSeed {
    static CACHE: OnceLock<Arc<Vec<Term>>> = OnceLock::new();
    let terms = CACHE.get_or_init(|| {
        Arc::new(
            partition_f64(ETA_INVERSE_TERMS - 1)
                .into_iter()
                .enumerate()
                .map(|(n, p)| Term { lambda: n as f64 - 1.0 / 24.0, a: Complex64::new(p, 0.0) })
                .collect(),
        )
    });
    HoloSeed::from_shared("eta-inverse", -0.5, terms.clone(), false, true).expect("valid table")
}

/// η²⁴ = q Π(1 − qⁿ)²⁴, weight 12.
pub fn eta24() -> HoloSeed {
    static CACHE: OnceLock<Arc<Vec<Term>>> = OnceLock::new();
    let terms = CACHE.get_or_init(|| {
        let c = euler_product_power(24, ETA24_TERMS - 1).expect("eta24 coefficients fit in i128");
        Arc::new(
            c.into_iter()
                .enumerate()
                .map(|(n, v)| Term { lambda: n as f64 + 1.0, a: Complex64::new(v as f64, 0.0) })
                .collect(),
        )
    });
    HoloSeed::from_shared("eta24", 12.0, terms.clone(), false, true).expect("valid table")
}

/// ηʳ = q^{r/24} Π(1 − qⁿ)ʳ with `n_terms` coefficients, weight r/2.
/// Vanishing coefficients are dropped from the table.
pub fn eta_power(r: u32, n_terms: usize) -> Result<HoloSeed> {
    if r == 0 || n_terms == 0 {
        return Err(Error::InvalidArgument("eta_power needs r >= 1 and at least one term".into()));
    }
    let c = euler_product_power(r, n_terms - 1)?;
    let offset = r as f64 / 24.0;
    let terms = c
        .into_iter()
        .enumerate()
        .filter(|(_, v)| *v != 0)
        .map(|(n, v)| Term { lambda: n as f64 + offset, a: Complex64::new(v as f64, 0.0) })
        .collect();
    HoloSeed::from_terms(&format!("eta^{r}"), r as f64 / 2.0, terms, false, true)
}

/// |χ₀|² + |χ_{1/2}|² + |χ_{1/16}|² of the Ising model, keeping the
/// complete shells n + m ≤ `order` of each character pair.
pub fn ising_z(order: usize) -> Result<RealSeed> {
    if order == 0 {
        return Err(Error::InvalidArgument("ising order must be positive".into()));
    }
    // χ₀ ± χ_{1/2} = q^{−1/48} Π(1 ± q^{n−1/2}); split by parity in x = q^{1/2}.
    let odd = odd_distinct_product(2 * order + 1);
    let chi0: Vec<f64> = (0..=order).map(|m| odd[2 * m] as f64).collect();
    let chi_half: Vec<f64> = (0..=order).map(|m| odd[2 * m + 1] as f64).collect();
    // χ_{1/16} = q^{1/24} Π(1 + qⁿ)
    let chi_sigma: Vec<f64> = distinct_parts(order).into_iter().map(|v| v as f64).collect();
    let mut terms = Vec::new();
    for (h, b) in [(0.0, &chi0), (0.5, &chi_half), (1.0 / 16.0, &chi_sigma)] {
        let base = 2.0 * h - 1.0 / 24.0;
        for n in 0..=order {
            for m in 0..=(order - n) {
                let a = b[n] * b[m];
                if a != 0.0 {
                    terms.push(RealTerm {
                        lambda: base + (n + m) as f64,
                        p: m as i64 - n as i64,
                        a: Complex64::new(a, 0.0),
                    });
                }
            }
        }
    }
    RealSeed::from_terms("ising-Z", 0.0, terms)
}

/// |F|² for a holomorphic seed whose exponents differ by integers: terms
/// (λₙ + λₘ, λₘ − λₙ, aₙ conj(aₘ)) for all pairs with λₙ + λₘ ≤ `lambda_max`,
/// weight 2k.
pub fn hermitian_square(seed: &HoloSeed, lambda_max: f64) -> Result<RealSeed> {
    let delta = seed.delta();
    let mut base = Vec::new();
    let mut j = 0;
    loop {
        match seed.term(j) {
            Ok(Some(t)) if t.lambda + delta <= lambda_max => base.push(t),
            Ok(_) => break,
            Err(e) => return Err(e),
        }
        j += 1;
    }
    let mut terms = Vec::new();
    for n in &base {
        for m in &base {
            if n.lambda + m.lambda > lambda_max {
                continue;
            }
            let diff = m.lambda - n.lambda;
            let p = diff.round();
            if (diff - p).abs() > 1e-9 {
                return Err(Error::SeedFormat("exponent differences must be integers for |F|^2".into()));
            }
            terms.push(RealTerm { lambda: n.lambda + m.lambda, p: p as i64, a: n.a * m.a.conj() });
        }
    }
    RealSeed::from_terms(&format!("|{}|^2", seed.name()), 2.0 * seed.weight(), terms)
}

/// Looks up a built-in seed by name.
pub fn builtin_seed(name: &str, ising_order: usize) -> Result<Seed> {
    match name {
        "theta3" => Ok(Seed::Holo(theta3())),
        "eta-inverse" => Ok(Seed::Holo(eta_inverse())),
        "eta24" => Ok(Seed::Holo(eta24())),
        "ising-Z" => Ok(Seed::Real(ising_z(ising_order)?)),
        other => Err(Error::UnknownSeed(other.into())),
    }
}
