//! Command implementations behind the `ladm` binary.
//!
//! Every command returns its output as a `String` so tests can drive it
//! without a process boundary; `main` only parses, dispatches and writes.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ladm_core::oracle::{self, ComparisonRow, Part};
use ladm_core::solver::{self, order_magnitudes};
use ladm_core::{EquationModel, ExactSolution, LadmError, LadmRun, TimeSeries};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] LadmError),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 2 for anything the caller can fix by changing flags, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(
                LadmError::ZeroAmplitude
                | LadmError::NonFinite(_)
                | LadmError::BranchCut { .. }
                | LadmError::InvalidGrid(_),
            ) => 2,
            CliError::Core(_) | CliError::Io { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "ladm", version, about = "LADM solver for the Kundu-Eckhaus equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the iterates u_0..u_k and their sum as JSON trees.
    Solve(RunArgs),
    /// One-component comparison against the closed form at a single t.
    Table(RunArgs),
    /// Full comparison over the (t, x) product grid.
    Grid(RunArgs),
    /// Per-order magnitudes of the PDE residual of the truncation.
    Residual(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PartArg {
    Real,
    Imag,
}

impl From<PartArg> for Part {
    fn from(p: PartArg) -> Self {
        match p {
            PartArg::Real => Part::Real,
            PartArg::Imag => Part::Imag,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    #[default]
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Initial amplitude [default: 2^(1/16)]
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Wavenumber of the initial plane wave
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub harmonic: i64,
    /// Number of LADM corrections k (the sum has k+1 terms)
    #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
    pub terms: i64,
    /// Time value; repeat for several [default: 1.0]
    #[arg(long = "t", allow_negative_numbers = true)]
    pub t: Vec<f64>,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub x_start: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub x_step: f64,
    #[arg(long, default_value_t = 10, allow_negative_numbers = true)]
    pub x_count: i64,
    #[arg(long, value_enum, default_value_t = PartArg::Real)]
    pub part: PartArg,
    #[arg(long, value_enum)]
    pub emit: Option<Emit>,
    /// Output file [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Default for RunArgs {
    fn default() -> Self {
        Self {
            beta: None,
            harmonic: 1,
            terms: 4,
            t: Vec::new(),
            x_start: 0.5,
            x_step: 0.5,
            x_count: 10,
            part: PartArg::Real,
            emit: None,
            out: None,
        }
    }
}

/// Validated run parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub beta: f64,
    pub harmonic: i64,
    pub terms: usize,
    pub t_values: Vec<f64>,
    pub x_start: f64,
    pub x_step: f64,
    pub x_count: usize,
    pub part: Part,
    pub emit: Option<Emit>,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::try_from(RunArgs::default()).expect("defaults are valid")
    }
}

impl TryFrom<RunArgs> for RunConfig {
    type Error = CliError;

    fn try_from(a: RunArgs) -> Result<Self> {
        let beta = a.beta.unwrap_or_else(ladm_core::reference_beta);
        if beta == 0.0 || !beta.is_finite() {
            return Err(CliError::Config(format!(
                "--beta must be finite and nonzero, got {beta}"
            )));
        }
        let terms =
            usize::try_from(a.terms).map_err(|_| CliError::Config(format!("--terms must be >= 0, got {}", a.terms)))?;
        let t_values = if a.t.is_empty() { vec![1.0] } else { a.t };
        if let Some(t) = t_values.iter().find(|t| !t.is_finite()) {
            return Err(CliError::Config(format!("--t must be finite, got {t}")));
        }
        let x_count = usize::try_from(a.x_count)
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| CliError::Config(format!("--x-count must be >= 1, got {}", a.x_count)))?;
        if !a.x_start.is_finite() || !a.x_step.is_finite() {
            return Err(CliError::Config("--x-start and --x-step must be finite".into()));
        }
        if x_count > 1 && a.x_step == 0.0 {
            return Err(CliError::Config("--x-step must be nonzero when --x-count > 1".into()));
        }
        Ok(RunConfig {
            beta,
            harmonic: a.harmonic,
            terms,
            t_values,
            x_start: a.x_start,
            x_step: a.x_step,
            x_count,
            part: a.part.into(),
            emit: a.emit,
            out: a.out,
        })
    }
}

impl RunConfig {
    pub fn xs(&self) -> Vec<f64> {
        (0..self.x_count)
            .map(|i| self.x_start + i as f64 * self.x_step)
            .collect()
    }

    fn run(&self) -> Result<LadmRun> {
        Ok(solver::run(
            &EquationModel::kundu_eckhaus(),
            self.beta,
            self.harmonic,
            self.terms,
        )?)
    }

    fn exact(&self) -> Result<ExactSolution> {
        if self.harmonic != 1 {
            return Err(CliError::Config(format!(
                "the closed form is only available for --harmonic 1, got {}",
                self.harmonic
            )));
        }
        Ok(ExactSolution::new(self.beta, 1)?)
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn series_csv(out: &mut String, label: &str, s: &TimeSeries) {
    for (m, h) in s.coeffs().iter().enumerate() {
        for (k, c) in h.iter() {
            let re = ladm_core::format::fmt_sig(c.re, ladm_core::format::SIG_DIGITS);
            let im = ladm_core::format::fmt_sig(c.im, ladm_core::format::SIG_DIGITS);
            out.push_str(&format!("{label},{m},{k},{re},{im}\n"));
        }
    }
}

/// Iterates and truncated sum. JSON by default; CSV lists one coefficient per line.
pub fn cmd_solve(cfg: &RunConfig) -> Result<String> {
    let run = cfg.run()?;
    match cfg.emit.unwrap_or(Emit::Json) {
        Emit::Json => Ok(pretty(&json!({
            "beta": run.beta,
            "harmonic": run.harmonic,
            "terms": run.k,
            "iterates": run.iterates.iter().map(TimeSeries::to_json).collect::<Vec<_>>(),
            "truncated": run.truncated.to_json(),
        }))),
        Emit::Csv => {
            let mut out = String::from("series,power_t,k,re,im\n");
            for (n, u) in run.iterates.iter().enumerate() {
                series_csv(&mut out, &format!("u{n}"), u);
            }
            series_csv(&mut out, "sum", &run.truncated);
            Ok(out)
        }
    }
}

fn rows_json(rows: &[ComparisonRow]) -> String {
    pretty(&serde_json::to_value(rows).expect("rows serialize"))
}

/// Single-`t` comparison restricted to `cfg.part`, rows by ascending `x`.
pub fn cmd_table(cfg: &RunConfig) -> Result<String> {
    let [t] = cfg.t_values[..] else {
        return Err(CliError::Config(format!(
            "table takes exactly one --t, got {}",
            cfg.t_values.len()
        )));
    };
    let mut xs = cfg.xs();
    xs.sort_by(f64::total_cmp);
    let rows = oracle::compare_grid(&cfg.run()?, &cfg.exact()?, &xs, t)?;
    match cfg.emit.unwrap_or(Emit::Csv) {
        Emit::Csv => Ok(oracle::rows_to_part_csv(&rows, cfg.part)),
        Emit::Json => {
            let (l, e, err) = match cfg.part {
                Part::Real => ("re_ladm", "re_exact", "err_re"),
                Part::Imag => ("im_ladm", "im_exact", "err_im"),
            };
            let items: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let full = serde_json::to_value(r).expect("row serializes");
                    json!({ "x": r.x, "t": r.t, l: full[l], e: full[e], err: full[err] })
                })
                .collect();
            Ok(pretty(&Value::Array(items)))
        }
    }
}

/// All rows over `t_values × xs`, t-major.
pub fn cmd_grid(cfg: &RunConfig) -> Result<String> {
    let run = cfg.run()?;
    let sol = cfg.exact()?;
    let xs = cfg.xs();
    let mut rows = Vec::with_capacity(xs.len() * cfg.t_values.len());
    for &t in &cfg.t_values {
        rows.extend(oracle::compare_grid(&run, &sol, &xs, t)?);
    }
    match cfg.emit.unwrap_or(Emit::Csv) {
        Emit::Csv => Ok(oracle::rows_to_csv(&rows)),
        Emit::Json => Ok(rows_json(&rows)),
    }
}

/// Largest coefficient magnitude of each `tᵐ` in `∂t u − R u − N u`.
pub fn cmd_residual(cfg: &RunConfig) -> Result<String> {
    let model = EquationModel::kundu_eckhaus();
    let run = cfg.run()?;
    let mags = order_magnitudes(&solver::residual(&model, &run.truncated));
    match cfg.emit.unwrap_or(Emit::Json) {
        Emit::Json => Ok(pretty(&json!({
            "beta": run.beta,
            "harmonic": run.harmonic,
            "terms": run.k,
            "orders": mags
                .iter()
                .enumerate()
                .map(|(m, &v)| json!({ "power_t": m, "max_abs": v }))
                .collect::<Vec<_>>(),
        }))),
        Emit::Csv => {
            let mut out = String::from("power_t,max_abs\n");
            for (m, v) in mags.iter().enumerate() {
                out.push_str(&format!(
                    "{m},{}\n",
                    ladm_core::format::fmt_sig(*v, ladm_core::format::SIG_DIGITS)
                ));
            }
            Ok(out)
        }
    }
}

/// Runs one parsed command and returns its output text.
pub fn execute(command: Command) -> Result<(String, Option<PathBuf>)> {
    let (args, f): (RunArgs, fn(&RunConfig) -> Result<String>) = match command {
        Command::Solve(a) => (a, cmd_solve),
        Command::Table(a) => (a, cmd_table),
        Command::Grid(a) => (a, cmd_grid),
        Command::Residual(a) => (a, cmd_residual),
    };
    let cfg = RunConfig::try_from(args)?;
    let text = f(&cfg)?;
    Ok((text, cfg.out))
}

pub fn write_output(text: &str, out: Option<&std::path::Path>) -> Result<()> {
    use std::io::Write;
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}
