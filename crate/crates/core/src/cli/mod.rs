//! The `biwave` command line.
//!
//! Exit codes: `0` success, `1` verification failure, `2` input error.

mod commands;
pub mod suites;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{SolveConfig, SpinorConfig};
pub use suites::{check_names, run_verify, CheckResult, Report, Suite, REPORT_SCHEMA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "BIWAVE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "biwave", version, about = "Biquaternionic wave, Maxwell and spinor toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run seeded identity suites and emit a JSON report.
    Verify(VerifyArgs),
    /// Apply a rotor, boost or Poincaré map to a JSONL point stream.
    Transform(TransformArgs),
    /// Sample a generalized solution over a grid as CSV.
    Solve(SolveArgs),
    /// Sample an elementary spinor over a grid as CSV.
    Spinor(SpinorArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Random cases per check.
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Override every tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// JSONL points `{"tau":..,"x":[..]}`; stdin when absent.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveKind {
    Biwave,
    Maxwell,
    Md,
    Harmonic,
    Static,
}

#[derive(Debug, Args, Clone)]
pub struct NumericArgs {
    #[arg(long, default_value_t = crate::diffops::DEFAULT_FD_STEP)]
    pub fd_step: f64,
    #[arg(long)]
    pub quad_r: Option<usize>,
    #[arg(long)]
    pub quad_s: Option<usize>,
    /// Exit 1 when the largest residual exceeds this.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub kind: SolveKind,
    #[arg(long)]
    pub config: PathBuf,
    /// Append the equation residual per point.
    #[arg(long)]
    pub residual: bool,
    #[command(flatten)]
    pub numeric: NumericArgs,
}

#[derive(Debug, Args)]
pub struct SpinorArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Append the Dirac (or gradiental) residual per point.
    #[arg(long)]
    pub dirac_residual: bool,
    #[command(flatten)]
    pub numeric: NumericArgs,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub(crate) enum Failure {
    Input(String),
    Verify(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Verify(_) => EXIT_VERIFY,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Verify(m) => m,
        }
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub(crate) fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

pub(crate) fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

/// Writes to `path`, or to `fallback` when no path is given.
pub(crate) fn with_output(
    path: Option<&Path>,
    fallback: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), Failure> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| io_failure(p, e))?;
            let mut w = BufWriter::new(file);
            body(&mut w).and_then(|_| w.flush()).map_err(|e| io_failure(p, e))
        }
        None => body(fallback).map_err(|e| Failure::Input(format!("stdout: {e}"))),
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, Failure> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Failure::Input(format!("{THREADS_ENV} must be a non-negative integer, got {v:?}")))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Input(format!("thread pool: {e}")))
}

fn verify(args: &VerifyArgs, pool: &rayon::ThreadPool, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    if let Some(t) = args.tol {
        if t.is_nan() || t < 0.0 {
            return Err(Failure::Input(format!("--tol must be a non-negative number, got {t}")));
        }
    }
    let report = pool.install(|| run_verify(args.suite, args.n, args.seed, args.tol));
    let json = serde_json::to_string_pretty(&report).map_err(|e| Failure::Input(e.to_string()))?;
    with_output(args.out.as_deref(), out, |w| writeln!(w, "{json}"))?;
    if report.pass {
        return Ok(());
    }
    for c in report.failures() {
        let _ = writeln!(err, "FAIL {}/{}: max residual {:e} > tolerance {:e}", c.suite, c.name, c.max_residual, c.tolerance);
    }
    let names: Vec<String> = report.failures().map(|c| format!("{}/{}", c.suite, c.name)).collect();
    Err(Failure::Verify(format!("verification failed: {}", names.join(", "))))
}

/// Parses `args` and runs the command, writing results to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = thread_pool().and_then(|pool| match &cli.command {
        Command::Verify(a) => verify(a, &pool, out, err),
        Command::Transform(a) => commands::transform(a, out),
        Command::Solve(a) => commands::solve(a, &pool, out, err),
        Command::Spinor(a) => commands::spinor(a, &pool, out, err),
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

pub fn run() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = run_with(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    code
}
