use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;

use ttdeform::deform_holo::Normalization;
use ttdeform::deform_real::RealVariant;
use ttdeform::mellin::MultiplierRoute;
use ttdeform::numkit::Precision;
use ttdeform_cli::commands::{self, EvalKind, ScanKind};
use ttdeform_cli::config::{ConfigError, Format, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "ttdeform", version, about = "Deformed modular series: evaluation and verification")]
struct Cli {
    /// flat JSON config; flags override its fields
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    flags: Overrides,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a deformed series on a point or grid
    Eval {
        #[arg(value_enum)]
        kind: EvalArg,
    },
    /// Run a verification suite (`all` for every suite)
    Verify { suite: String },
    /// Mellin transforms and the deformation multiplier
    Mellin,
    /// Grid or Hagedorn scans; window violations are reported, not fatal
    Scan {
        #[arg(value_enum, default_value_t = ScanArg::Values)]
        kind: ScanArg,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum EvalArg {
    Holo,
    Real,
    Eisenstein,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ScanArg {
    Values,
    Hagedorn,
}

fn serde_enum<T: DeserializeOwned>(s: &str) -> Result<T, String> {
    serde_json::from_value(serde_json::Value::String(s.into())).map_err(|e| e.to_string())
}

#[derive(Args, Debug, Default)]
struct Overrides {
    /// built-in seed name or JSON seed file
    #[arg(long, global = true)]
    seed: Option<String>,
    /// comma-separated deformation strengths
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Option<Vec<f64>>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// complex point such as 1.2+0.3i
    #[arg(long, global = true, allow_hyphen_values = true)]
    delta: Option<String>,
    /// lo:hi:n for Re delta, optionally ,lo:hi:n for Im delta
    #[arg(long, global = true, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Mellin variable, or the Maass Eisenstein parameter
    #[arg(long, global = true, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    quad_order: Option<usize>,
    /// binary64 or double-double
    #[arg(long, global = true, value_parser = serde_enum::<Precision>)]
    precision: Option<Precision>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// unit or raw
    #[arg(long, global = true, value_parser = serde_enum::<Normalization>)]
    normalization: Option<Normalization>,
    /// weighted, invariant or residue
    #[arg(long, global = true, value_parser = serde_enum::<RealVariant>)]
    variant: Option<RealVariant>,
    /// auto, closed-form or quadrature
    #[arg(long, global = true, value_parser = serde_enum::<MultiplierRoute>)]
    route: Option<MultiplierRoute>,
    /// weight of the holomorphic Eisenstein series
    #[arg(long, global = true)]
    weight: Option<u32>,
    /// lattice cutoff M
    #[arg(long, global = true)]
    lattice: Option<u32>,
    #[arg(long, global = true)]
    ising_order: Option<usize>,
    /// record elapsed time in verification reports
    #[arg(long, global = true)]
    wall_time: bool,
}

impl Overrides {
    fn apply(self, c: &mut RunConfig) {
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = self.$f { c.$f = v; } )* };
        }
        macro_rules! set_opt {
            ($($f:ident),*) => { $( if self.$f.is_some() { c.$f = self.$f; } )* };
        }
        set!(alpha, tol, quad_order, precision, format, normalization, variant, route, weight, lattice, ising_order);
        set_opt!(seed, beta, delta, grid, s, out);
        c.wall_time |= self.wall_time;
    }
}

fn run(cli: Cli) -> Result<commands::Outcome, ConfigError> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    cli.flags.apply(&mut cfg);
    cfg.validate()?;
    let out = match cli.command {
        Command::Eval { kind } => commands::eval(
            &cfg,
            match kind {
                EvalArg::Holo => EvalKind::Holo,
                EvalArg::Real => EvalKind::Real,
                EvalArg::Eisenstein => EvalKind::Eisenstein,
            },
        )?,
        Command::Verify { suite } => commands::verify(&cfg, &suite)?,
        Command::Mellin => commands::mellin(&cfg)?,
        Command::Scan { kind } => commands::scan(
            &cfg,
            match kind {
                ScanArg::Values => ScanKind::Values,
                ScanArg::Hagedorn => ScanKind::Hagedorn,
            },
        )?,
    };
    match &cfg.out {
        Some(p) => std::fs::write(p, &out.text).map_err(|source| ConfigError::Io { path: p.clone(), source })?,
        None => print!("{}", out.text),
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) if o.pass => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("ttdeform: {e}");
            ExitCode::from(2)
        }
    }
}
