//! `eval`, `mellin`, `scan` and `verify`, each producing a rendered
//! document and a pass flag.

use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::Value;

use ttdeform::deform_holo::{deform_eval, hagedorn_scan, s_residual, DeformParams, FitWindow};
use ttdeform::deform_real::{deform_eval_real, st_residuals};
use ttdeform::maass::{eisenstein_holo_deformed, eisenstein_real, FlowFactor, LatticeCutoff};
use ttdeform::mellin::{deformed_mellin, dirichlet_beta, i_alpha, seed_mellin};
use ttdeform::spectra::{EvalResult, ModulusPoint, Seed, SeriesOptions};
use ttdeform::Error;

use crate::config::{ConfigError, Format, RunConfig};
use crate::report::{num, report_csv, to_json, Environment, Table};
use crate::suites::{run_suite, suite_names};

/// Terms summed for fixed-β Dirichlet series.
pub const BETA_TERMS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalKind {
    Holo,
    Real,
    Eisenstein,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanKind {
    Values,
    Hagedorn,
}

/// Rendered output and whether every row or check succeeded.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub pass: bool,
}

fn render(table: &Table, format: Format, pass: bool) -> Outcome {
    let text = match format {
        Format::Json => table.to_json(),
        Format::Csv => table.to_csv(),
    };
    Outcome { text, pass }
}

fn status(e: &Error) -> &'static str {
    match e {
        Error::OutsideWindow { .. } | Error::EmptyWindow { .. } => "outside-window",
        Error::Divergent { .. } => "divergent",
        Error::BranchCut { .. } => "branch-cut",
        Error::ToleranceUnreachable { .. } | Error::QuadratureNotConverged { .. } => "not-converged",
        _ => "error",
    }
}

fn alphas(cfg: &RunConfig) -> Vec<f64> {
    if cfg.alpha.is_empty() {
        vec![0.0]
    } else {
        cfg.alpha.clone()
    }
}

fn need_points(cfg: &RunConfig) -> Result<Vec<ModulusPoint>, ConfigError> {
    let p = cfg.points()?;
    if p.is_empty() {
        return Err(ConfigError::Invalid("no evaluation points (--delta or --grid)".into()));
    }
    Ok(p)
}

const EVAL_COLUMNS: [&str; 9] = ["alpha", "d1", "d2", "re", "im", "tail", "terms", "status", "message"];

fn value_row(alpha: f64, d: ModulusPoint, r: &Result<EvalResult, Error>) -> Vec<Value> {
    let head = vec![num(alpha), num(d.re()), num(d.im())];
    let tail = match r {
        Ok(v) => vec![num(v.value.re), num(v.value.im), num(v.tail_estimate), Value::from(v.terms_used), "ok".into(), Value::Null],
        Err(e) => vec![Value::Null, Value::Null, Value::Null, Value::Null, status(e).into(), e.to_string().into()],
    };
    head.into_iter().chain(tail).collect()
}

fn evaluate(cfg: &RunConfig, kind: EvalKind, seed: Option<&Seed>, alpha: f64, d: ModulusPoint) -> Result<EvalResult, Error> {
    let mut opts = SeriesOptions::new(cfg.tol);
    opts.precision = cfg.precision;
    match kind {
        EvalKind::Holo => {
            let seed = seed.expect("seed loaded").as_holo()?;
            deform_eval(seed, &DeformParams::new(alpha, cfg.normalization)?, d, &opts)
        }
        EvalKind::Real => {
            let seed = seed.expect("seed loaded").as_real()?;
            deform_eval_real(seed, &DeformParams::new(alpha, cfg.normalization)?, d, cfg.variant, &opts)
        }
        EvalKind::Eisenstein => {
            let cut = LatticeCutoff::new(cfg.lattice)?;
            match cfg.s_value().ok().flatten() {
                // Maass series: the flow multiplies by a constant
                Some(s) => {
                    let mut r = eisenstein_real(s, d, cut)?;
                    let f = FlowFactor::new(s, alpha).factor;
                    r.value *= f;
                    r.tail_estimate *= f.norm();
                    Ok(r)
                }
                None => eisenstein_holo_deformed(cfg.weight, alpha, d, cut),
            }
        }
    }
}

/// Relative S-covariance defect at one point; weight from the seed.
fn s_defect(cfg: &RunConfig, seed: &Seed, alpha: f64, d: ModulusPoint) -> Result<f64, Error> {
    match seed {
        Seed::Holo(h) => s_residual(h, alpha, d, cfg.tol),
        Seed::Real(r) => Ok(st_residuals(r, alpha, d, cfg.variant, cfg.tol)?.0),
    }
}

/// Rows ordered by alpha, then grid index. With `residual` the S defect
/// is added after the value columns.
fn value_table(cfg: &RunConfig, kind: EvalKind, command: &str, residual: bool) -> Result<(Table, Vec<bool>), ConfigError> {
    let points = need_points(cfg)?;
    let seed = match kind {
        EvalKind::Eisenstein => None,
        _ => Some(cfg.load_seed()?),
    };
    let jobs: Vec<(f64, ModulusPoint)> = alphas(cfg).into_iter().flat_map(|a| points.iter().map(move |&d| (a, d))).collect();
    let results: Vec<(Result<EvalResult, Error>, Value)> = jobs
        .par_iter()
        .map(|&(a, d)| {
            let v = evaluate(cfg, kind, seed.as_ref(), a, d);
            let r = match (&v, &seed, residual) {
                (Ok(_), Some(s), true) => s_defect(cfg, s, a, d).map_or(Value::Null, num),
                _ => Value::Null,
            };
            (v, r)
        })
        .collect();
    let mut columns = EVAL_COLUMNS.to_vec();
    if residual {
        columns.insert(5, "s_residual");
    }
    let mut table = Table::new(command, &columns);
    let mut windowed = Vec::with_capacity(jobs.len());
    for ((a, d), (r, res)) in jobs.iter().zip(results) {
        windowed.push(matches!(&r, Ok(_) | Err(Error::OutsideWindow { .. } | Error::EmptyWindow { .. })));
        let mut row = value_row(*a, *d, &r);
        if residual {
            row.insert(5, res);
        }
        table.push(row);
    }
    Ok((table, windowed))
}

pub fn eval(cfg: &RunConfig, kind: EvalKind) -> Result<Outcome, ConfigError> {
    let (table, _) = value_table(cfg, kind, "eval", false)?;
    let ok = table.rows.iter().all(|r| r[7] == "ok");
    Ok(render(&table, cfg.format, ok))
}

fn cx_cells(z: Complex64) -> [Value; 2] {
    [num(z.re), num(z.im)]
}

/// R⁰(s), I^α(k, s), R^α(s) and the product defect for each α; with a
/// β the fixed-β Dirichlet series instead.
pub fn mellin(cfg: &RunConfig) -> Result<Outcome, ConfigError> {
    let seed = cfg.load_seed()?;
    let s = cfg.s_value()?.ok_or_else(|| ConfigError::Invalid("mellin needs --s".into()))?;
    let seed = seed.as_holo().map_err(|e| ConfigError::Invalid(e.to_string()))?;
    if let Some(beta) = cfg.beta {
        let mut t = Table::new("mellin", &["beta", "s_re", "s_im", "re", "im", "tail", "status", "message"]);
        let r = dirichlet_beta(seed, Complex64::new(beta, 0.0), s, BETA_TERMS, cfg.normalization);
        let mut row = vec![num(beta), num(s.re), num(s.im)];
        let ok = r.is_ok();
        match r {
            Ok((v, tail)) => row.extend(cx_cells(v).into_iter().chain([num(tail), "ok".into(), Value::Null])),
            Err(e) => row.extend([Value::Null, Value::Null, Value::Null, status(&e).into(), e.to_string().into()]),
        }
        t.push(row);
        return Ok(render(&t, cfg.format, ok));
    }
    let columns = [
        "alpha", "s_re", "s_im", "r0_re", "r0_im", "i_re", "i_im", "r_alpha_re", "r_alpha_im", "product_residual", "status",
        "message",
    ];
    let mut t = Table::new("mellin", &columns);
    let rows: Vec<Result<Vec<Value>, Error>> = alphas(cfg)
        .par_iter()
        .map(|&alpha| {
            let r0 = seed_mellin(seed, s, cfg.tol)?.r;
            let i = i_alpha(seed.weight(), s, alpha, cfg.route)?.value;
            let ra = if alpha == 0.0 { i * r0 } else { deformed_mellin(seed, alpha, s, cfg.tol)?.r };
            let mut row = vec![num(alpha), num(s.re), num(s.im)];
            row.extend(cx_cells(r0));
            row.extend(cx_cells(i));
            row.extend(cx_cells(ra));
            row.extend([num((ra - i * r0).norm() / r0.norm()), "ok".into(), Value::Null]);
            Ok(row)
        })
        .collect();
    let mut ok = true;
    for (alpha, r) in alphas(cfg).iter().zip(rows) {
        match r {
            Ok(row) => t.push(row),
            Err(e) => {
                ok = false;
                let mut row = vec![num(*alpha), num(s.re), num(s.im)];
                row.extend(std::iter::repeat(Value::Null).take(7));
                row.extend([status(&e).into(), e.to_string().into()]);
                t.push(row);
            }
        }
    }
    Ok(render(&t, cfg.format, ok))
}

/// Like `eval holo` but domain violations are data, not failures.
pub fn scan(cfg: &RunConfig, kind: ScanKind) -> Result<Outcome, ConfigError> {
    match kind {
        ScanKind::Values => {
            let seed = cfg.load_seed()?;
            let kind = match seed {
                Seed::Holo(_) => EvalKind::Holo,
                Seed::Real(_) => EvalKind::Real,
            };
            let (table, windowed) = value_table(cfg, kind, "scan", true)?;
            let pass = windowed.iter().all(|w| *w);
            Ok(render(&table, cfg.format, pass))
        }
        ScanKind::Hagedorn => {
            let seed = cfg.load_seed()?;
            let seed = seed.as_holo().map_err(|e| ConfigError::Invalid(e.to_string()))?;
            if cfg.alpha.is_empty() {
                return Err(ConfigError::Invalid("hagedorn scan needs --alpha".into()));
            }
            let mut t = Table::new("scan", &["alpha", "delta_c", "exponent", "status", "message"]);
            let fits: Vec<_> = cfg.alpha.par_iter().map(|&a| hagedorn_scan(seed, a, &FitWindow::default())).collect();
            let mut ok = true;
            for (a, f) in cfg.alpha.iter().zip(fits) {
                match f {
                    Ok(f) => t.push(vec![num(*a), num(f.delta_c), num(f.exponent), "ok".into(), Value::Null]),
                    Err(e) => {
                        ok = false;
                        t.push(vec![num(*a), Value::Null, Value::Null, status(&e).into(), e.to_string().into()]);
                    }
                }
            }
            Ok(render(&t, cfg.format, ok))
        }
    }
}

pub fn verify(cfg: &RunConfig, suite: &str) -> Result<Outcome, ConfigError> {
    let start = Instant::now();
    let mut report = run_suite(suite, Environment::new(cfg.precision)).ok_or_else(|| {
        ConfigError::Invalid(format!("unknown suite '{suite}' (known: {})", suite_names().join(", ")))
    })?;
    if cfg.wall_time {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    let text = match cfg.format {
        Format::Json => to_json(&report),
        Format::Csv => report_csv(&report),
    };
    Ok(Outcome { text, pass: report.pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: &str) -> RunConfig {
        RunConfig { seed: Some(seed.into()), ..RunConfig::default() }
    }

    #[test]
    fn eval_rows_follow_grid_order() {
        let c = RunConfig { alpha: vec![0.1, 0.0], grid: Some("0.8:1.2:2,0:0.3:2".into()), ..cfg("theta3") };
        let out = eval(&c, EvalKind::Holo).unwrap();
        assert!(out.pass);
        let v: Value = serde_json::from_str(&out.text).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 8);
        assert_eq!(rows[0]["alpha"].as_f64(), Some(0.1));
        assert_eq!(rows[1]["d2"].as_f64(), Some(0.3));
        assert_eq!(rows[4]["alpha"].as_f64(), Some(0.0));
    }

    #[test]
    fn window_violations() {
        let c = RunConfig { alpha: vec![0.1], grid: Some("0.05:1:2".into()), format: Format::Csv, ..cfg("eta-inverse") };
        let e = eval(&c, EvalKind::Holo).unwrap();
        assert!(!e.pass);
        let s = scan(&c, ScanKind::Values).unwrap();
        assert!(s.pass);
        assert!(s.text.contains("outside-window"));
    }

    #[test]
    fn kind_mismatch_is_a_failed_row() {
        let c = RunConfig { delta: Some("1+0.2i".into()), ..cfg("theta3") };
        assert!(!eval(&c, EvalKind::Real).unwrap().pass);
    }

    #[test]
    fn eisenstein_flow_scales() {
        let base = RunConfig { delta: Some("1.1+0.2i".into()), s: Some("2".into()), lattice: 10, ..RunConfig::default() };
        let get = |a: f64| {
            let c = RunConfig { alpha: vec![a], ..base.clone() };
            let v: Value = serde_json::from_str(&eval(&c, EvalKind::Eisenstein).unwrap().text).unwrap();
            v["rows"][0]["re"].as_f64().unwrap()
        };
        assert!((get(0.4) / get(0.0) - 0.2f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(verify(&RunConfig::default(), "nope"), Err(ConfigError::Invalid(_))));
    }
}
