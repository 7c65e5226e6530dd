//! Command-line front end: SNR sweeps, figure presets and validation runs.
//!
//! SNR is given in dB everywhere on this interface. Output is CSV with
//! numbers in `{:.11e}` form, so files are byte-stable across platforms and
//! locales. Exit codes: 0 success, 1 validation failure, 2 usage or
//! configuration error.

pub mod config;
pub mod figure;
pub mod sweep;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use config::{Include, ScenarioKind, SnrGrid, SweepSpec};
pub use figure::{preset_header, write_figure, FigureId};
pub use sweep::{run_sweep, write_csv, SweepRow, CSV_HEADER};

use crate::analytic::{Scenario1Config, Scenario2Config, ScenarioConfig};
use crate::error::{Error, Result};
use crate::montecarlo::TrialBatch;
use crate::validation::{run_validation_suite, ValidationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable that caps the worker thread count.
pub const THREADS_ENV: &str = "NOMA_PERF_THREADS";

#[derive(Debug, Parser)]
#[command(name = "noma-perf", version, about = "Outage and throughput of NOMA over Nakagami fading")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate outage curves over an SNR grid.
    Sweep(SweepArgs),
    /// Regenerate the curves of one figure from its preset.
    Figure(FigureArgs),
    /// Check every closed form against quadrature and simulation.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// TOML sweep file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub scenario: Option<ScenarioKind>,
    #[arg(long, allow_hyphen_values = true)]
    pub snr_start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub snr_stop: Option<f64>,
    #[arg(long)]
    pub snr_step: Option<f64>,
    /// Comma-separated fading shapes.
    #[arg(long, value_delimiter = ',')]
    pub mu: Option<Vec<u32>>,
    /// Comma-separated user ranks to report.
    #[arg(long, value_delimiter = ',')]
    pub users: Option<Vec<u32>>,
    #[command(flatten)]
    pub sim: SimArgs,
    /// Add the OMA benchmark column.
    #[arg(long)]
    pub oma: bool,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub id: FigureId,
    #[command(flatten)]
    pub sim: SimArgs,
}

#[derive(Debug, Args)]
pub struct SimArgs {
    /// Monte Carlo trials per point (0 disables simulation).
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Parallel partitions per simulation; results do not depend on it.
    #[arg(long)]
    pub chunks: Option<u32>,
    #[arg(long)]
    pub no_mc: bool,
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// TOML sweep file selecting scenarios, shapes and grid; the shipped
    /// defaults are validated when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub chunks: Option<u32>,
    /// Report file (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl SimArgs {
    fn apply(&self, spec: &mut SweepSpec) {
        if let Some(t) = self.trials {
            spec.trials = t;
        }
        if let Some(s) = self.seed {
            spec.seed = s;
        }
        if self.chunks.is_some() {
            spec.chunks = self.chunks;
        }
        if self.no_mc {
            spec.include.mc = false;
        }
        spec.output = self.out.clone();
    }
}

/// Builds the sweep spec from an optional config file and flag overrides.
pub fn sweep_spec(args: &SweepArgs) -> Result<SweepSpec> {
    let mut spec = match &args.config {
        Some(path) => SweepSpec::from_file(path)?,
        None => SweepSpec::default(),
    };
    if let Some(v) = args.scenario {
        spec.scenario = v;
    }
    if let Some(v) = args.snr_start {
        spec.snr_db.start = v;
    }
    if let Some(v) = args.snr_stop {
        spec.snr_db.stop = v;
    }
    if let Some(v) = args.snr_step {
        spec.snr_db.step = v;
    }
    if let Some(v) = &args.mu {
        spec.mu = v.clone();
    }
    if args.users.is_some() {
        spec.users = args.users.clone();
    }
    if args.oma {
        spec.include.oma = true;
    }
    args.sim.apply(&mut spec);
    Ok(spec)
}

pub fn cmd_sweep(spec: &SweepSpec) -> Result<()> {
    let rows = run_sweep(spec)?;
    with_output(spec.output.as_deref(), |w| write_csv(&rows, w))
}

pub fn cmd_figure(args: &FigureArgs) -> Result<()> {
    let mut spec = args.id.spec()?;
    args.sim.apply(&mut spec);
    with_output(spec.output.as_deref(), |w| write_figure(args.id, &spec, w))
}

/// Configurations validated when no file is given: both deployments with
/// their default parameters for shapes 1 to 3 over 0 to 40 dB.
pub fn default_validation_set() -> (Vec<ScenarioConfig>, Vec<f64>) {
    let mut configs = Vec::new();
    for mu in 1..=3 {
        configs.push(ScenarioConfig::Cooperative(Scenario1Config::preset(mu)));
        configs.push(ScenarioConfig::Direct(Scenario2Config::preset(mu)));
    }
    let grid = (0..=8).map(|i| 5.0 * i as f64).collect();
    (configs, grid)
}

pub fn cmd_validate(args: &ValidateArgs) -> Result<ValidationReport> {
    let (configs, grid) = match &args.config {
        None => default_validation_set(),
        Some(path) => {
            let spec = SweepSpec::from_file(path)?;
            spec.validate()?;
            let mut configs = Vec::new();
            for &mu in &spec.mu {
                if spec.scenario.cooperative() {
                    configs.push(ScenarioConfig::Cooperative(spec.cooperative_for(mu)));
                }
                if spec.scenario.direct() {
                    configs.push(ScenarioConfig::Direct(spec.direct_for(mu)));
                }
            }
            (configs, spec.snr_db.points())
        }
    };
    let batch = (args.trials > 0).then(|| {
        let b = TrialBatch::new(args.trials, args.seed);
        args.chunks.map_or(b, |c| b.with_chunks(c))
    });
    let report = run_validation_suite(&configs, &grid, batch.as_ref())?;
    with_output(args.out.as_deref(), |w| report.write_csv(w))?;
    Ok(report)
}

fn with_output<F>(path: Option<&Path>, write: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            write(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            write(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::config(THREADS_ENV, format!("must be a positive integer, got `{raw}`")))?;
    // a pool that is already initialised keeps its size
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidConfig { .. } | Error::Parse(_) | Error::Domain(_) | Error::Io(_) => EXIT_USAGE,
        Error::Quadrature { .. } => EXIT_VALIDATION_FAILED,
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    let outcome = match &cli.command {
        Command::Sweep(args) => sweep_spec(args).and_then(|s| cmd_sweep(&s)).map(|_| EXIT_OK),
        Command::Figure(args) => cmd_figure(args).map(|_| EXIT_OK),
        Command::Validate(args) => cmd_validate(args).map(|report| {
            let failed = report.failures().count();
            eprintln!("{} rows, {failed} failed", report.rows.len());
            for r in report.failures() {
                eprintln!(
                    "FAIL {} mu={} {} dB {}: exact {:e} oracle {:e} mc {:?}",
                    r.scenario, r.mu, r.rho_db, r.quantity, r.exact, r.oracle, r.mc
                );
            }
            if failed == 0 {
                EXIT_OK
            } else {
                EXIT_VALIDATION_FAILED
            }
        }),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        exit_code(&e)
    })
}

/// Entry point for the binary: logging from `RUST_LOG` (default `warn`).
pub fn main() -> i32 {
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    run(std::env::args_os())
}
