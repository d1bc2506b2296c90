//! Flat run configuration. A JSON file supplies defaults; each key can be
//! overridden by the command-line flag of the same name.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use ttdeform::deform_holo::Normalization;
use ttdeform::deform_real::RealVariant;
use ttdeform::mellin::MultiplierRoute;
use ttdeform::numkit::Precision;
use ttdeform::spectra::{builtin_seed, seed_json::parse_seed, ModulusPoint, Seed, BUILTIN_NAMES};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("bad config file {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    /// built-in name or path to a JSON seed description
    pub seed: Option<String>,
    pub alpha: Vec<f64>,
    pub beta: Option<f64>,
    /// single point, e.g. "1.2+0.3i"
    pub delta: Option<String>,
    /// "lo:hi:n" for Re δ, optionally ",lo:hi:n" for Im δ
    pub grid: Option<String>,
    /// Mellin variable or Eisenstein parameter
    pub s: Option<String>,
    pub tol: f64,
    pub quad_order: usize,
    pub precision: Precision,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub normalization: Normalization,
    pub variant: RealVariant,
    pub route: MultiplierRoute,
    /// weight of the holomorphic Eisenstein series
    pub weight: u32,
    pub lattice: u32,
    pub ising_order: usize,
    pub wall_time: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: None,
            alpha: Vec::new(),
            beta: None,
            delta: None,
            grid: None,
            s: None,
            tol: 1e-12,
            quad_order: 120,
            precision: Precision::Binary64,
            out: None,
            format: Format::Json,
            normalization: Normalization::Unit,
            variant: RealVariant::Weighted,
            route: MultiplierRoute::Auto,
            weight: 4,
            lattice: 40,
            ising_order: ttdeform::spectra::builtin::ISING_DEFAULT_ORDER,
            wall_time: false,
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
        serde_json::from_str(&text).map_err(|source| ConfigError::Json { path: path.into(), source })
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(invalid(format!("tol must be positive, got {}", self.tol)));
        }
        if let Some(a) = self.alpha.iter().find(|a| !(a.is_finite() && **a >= 0.0)) {
            return Err(invalid(format!("alpha must be finite and >= 0, got {a}")));
        }
        if let Some(b) = self.beta.filter(|b| !b.is_finite()) {
            return Err(invalid(format!("beta must be finite, got {b}")));
        }
        if self.quad_order == 0 || self.quad_order > ttdeform::numkit::quad::MAX_HERMITE_ORDER {
            return Err(invalid(format!(
                "quad-order must be in 1..={}, got {}",
                ttdeform::numkit::quad::MAX_HERMITE_ORDER,
                self.quad_order
            )));
        }
        if self.lattice == 0 {
            return Err(invalid("lattice cutoff must be positive"));
        }
        if self.ising_order == 0 {
            return Err(invalid("ising-order must be positive"));
        }
        self.points()?;
        self.s_value()?;
        Ok(())
    }

    /// Grid points in lexicographic index order (Re δ outer, Im δ inner);
    /// `delta` alone gives one point; neither gives an empty list.
    pub fn points(&self) -> Result<Vec<ModulusPoint>, ConfigError> {
        match (&self.delta, &self.grid) {
            (Some(_), Some(_)) => Err(invalid("give either delta or grid, not both")),
            (Some(d), None) => {
                let z = parse_complex(d)?;
                Ok(vec![ModulusPoint::from_complex(z).map_err(|e| invalid(format!("delta {d}: {e}")))?])
            }
            (None, Some(g)) => parse_grid(g),
            (None, None) => Ok(Vec::new()),
        }
    }

    pub fn s_value(&self) -> Result<Option<Complex64>, ConfigError> {
        self.s.as_deref().map(parse_complex).transpose()
    }

    pub fn load_seed(&self) -> Result<Seed, ConfigError> {
        let name = self.seed.as_deref().ok_or_else(|| invalid("no seed given (--seed)"))?;
        load_seed(name, self.ising_order)
    }
}

pub fn load_seed(name: &str, ising_order: usize) -> Result<Seed, ConfigError> {
    if BUILTIN_NAMES.contains(&name) {
        return builtin_seed(name, ising_order).map_err(|e| invalid(e.to_string()));
    }
    let path = Path::new(name);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
        return parse_seed(&text).map_err(|e| invalid(format!("{name}: {e}")));
    }
    Err(invalid(format!("unknown seed '{name}' (built-ins: {}; or a path to a JSON file)", BUILTIN_NAMES.join(", "))))
}

pub fn parse_complex(text: &str) -> Result<Complex64, ConfigError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let z = Complex64::from_str(&t).map_err(|_| invalid(format!("cannot parse complex number '{text}'")))?;
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(invalid(format!("complex number '{text}' is not finite")));
    }
    Ok(z)
}

fn parse_axis(spec: &str) -> Result<Vec<f64>, ConfigError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || invalid(format!("grid axis '{spec}' must be lo:hi:n"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if n == 0 || !lo.is_finite() || !hi.is_finite() || (n > 1 && hi < lo) {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}

pub fn parse_grid(spec: &str) -> Result<Vec<ModulusPoint>, ConfigError> {
    let mut axes = spec.split(',');
    let re = parse_axis(axes.next().unwrap_or(""))?;
    let im = match axes.next() {
        Some(a) => parse_axis(a)?,
        None => vec![0.0],
    };
    if axes.next().is_some() {
        return Err(invalid(format!("grid '{spec}' has more than two axes")));
    }
    let mut out = Vec::with_capacity(re.len() * im.len());
    for &x in &re {
        for &y in &im {
            out.push(ModulusPoint::new(x, y).map_err(|e| invalid(format!("grid point ({x}, {y}): {e}")))?);
        }
    }
    Ok(out)
}
