//! The `fracdim` command line: exact dimension reports, empirical estimates,
//! SVG rendering and self-checks for system documents.
//!
//! [`run`] is the whole program minus process plumbing, so tests can drive
//! it in-process and inspect output and exit code.

mod check;
mod dims;
mod document;
mod estimate;
pub mod manifest;
mod render;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use fracdim::attractor::AttractorError;
use fracdim::estimate::{EstimateError, Ladder};
use fracdim::exact::{ExactError, HausdorffSettings};
use fracdim::model::{parse_system, ModelError, System};

pub use check::{check_system, CheckLine, CheckOptions, CheckOutcome};
pub use render::{render_svg, RENDER_CAP};

/// Process exit status.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    /// Unreadable, malformed or invalid input, bad flags, I/O failure.
    Input = 1,
    /// A solver failed or a word budget was exceeded.
    Numerical = 2,
    /// A computed result broke an invariant or a declared tolerance.
    Invariant = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// An error tagged with the exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub exit: Exit,
    pub error: anyhow::Error,
}

impl Failure {
    fn input(error: impl Into<anyhow::Error>) -> Self {
        Failure { exit: Exit::Input, error: error.into() }
    }

    fn numerical(error: impl Into<anyhow::Error>) -> Self {
        Failure { exit: Exit::Numerical, error: error.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        Failure::input(e)
    }
}

impl From<ExactError> for Failure {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::Model(_) => Failure::input(e),
            _ => Failure::numerical(e),
        }
    }
}

impl From<AttractorError> for Failure {
    fn from(e: AttractorError) -> Self {
        match e {
            AttractorError::Budget { .. } => Failure::numerical(e),
            _ => Failure::input(e),
        }
    }
}

impl From<EstimateError> for Failure {
    fn from(e: EstimateError) -> Self {
        match e {
            EstimateError::EmptyCloud => Failure::numerical(e),
            _ => Failure::input(e),
        }
    }
}

type Outcome = Result<Exit, Failure>;

#[derive(Parser, Debug)]
#[command(name = "fracdim", version, about = "Lower, Hausdorff, box and Assouad dimensions of self-similar sets and self-affine carpets")]
struct Cli {
    /// Solver tolerance for the Moran equations and the Hausdorff optimizer.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    /// Random restarts of the Hausdorff optimizer (on top of the uniform start).
    #[arg(long, global = true, default_value_t = 16)]
    restarts: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact dimension report.
    Dims {
        path: PathBuf,
        /// Machine-readable JSON instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// Estimate dimensions from a generated point cloud and compare with the
    /// exact values.
    Estimate {
        path: PathBuf,
        /// Refinement depth; the cloud resolution is the largest shorter side
        /// of a map raised to this power.  Defaults to the manifest entry, else 6.
        #[arg(long)]
        depth: Option<usize>,
        /// Seed for sampling ball centers.  Defaults to the manifest entry, else 0.
        #[arg(long)]
        seed: Option<u64>,
        /// Scale ladder `base:Rlo..Rhi:jlo..jhi` (outer radii base^-a, inner
        /// scales R·base^-j).  Defaults to the manifest entry, else 2:2..5:2..6.
        #[arg(long)]
        ladder: Option<Ladder>,
        /// Tolerance manifest; defaults to manifest.json next to the input.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Draw the defining pattern next to a depth-K approximation as SVG.
    Render {
        path: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Validate the system and the internal consistency of its report.
    Check { path: PathBuf },
}

struct Context {
    tol: f64,
    settings: HausdorffSettings,
}

impl Context {
    fn new(cli: &Cli) -> Result<Self, Failure> {
        if !(cli.tol > 0.0 && cli.tol < 1e-3) {
            return Err(Failure::input(anyhow::anyhow!("--tol must lie in (0, 1e-3), got {}", cli.tol)));
        }
        let settings = HausdorffSettings { restarts: cli.restarts, tolerance: cli.tol, ..Default::default() };
        Ok(Context { tol: cli.tol, settings })
    }
}

/// The input file: raw bytes (for the fingerprint) and the parsed system.
struct Input {
    bytes: Vec<u8>,
    system: System,
}

fn read_input(path: &Path) -> Result<Input, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::input(anyhow::Error::new(e).context(format!("reading {}", path.display()))))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| Failure::input(anyhow::Error::new(e).context(format!("{} is not UTF-8", path.display()))))?;
    let system = parse_system(text)
        .map_err(|e| Failure::input(anyhow::Error::new(e).context(format!("parsing {}", path.display()))))?;
    Ok(Input { bytes, system })
}

/// Runs the program on `args` (including the program name), writing normal
/// output to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let exit = if e.use_stderr() { Exit::Input } else { Exit::Ok };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return exit;
        }
    };
    match dispatch(&cli, out) {
        Ok(exit) => exit,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.exit
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let ctx = Context::new(cli)?;
    match &cli.command {
        Command::Dims { path, json } => dims::run(&ctx, &read_input(path)?, *json, out),
        Command::Estimate { path, depth, seed, ladder, manifest, json } => {
            let entry = manifest::lookup(path, manifest.as_deref()).map_err(Failure::input)?;
            let opts = estimate::Options { depth: *depth, seed: *seed, ladder: ladder.clone(), entry, json: *json };
            estimate::run(&ctx, &read_input(path)?, &opts, out)
        }
        Command::Render { path, depth, output } => render::run(&read_input(path)?, *depth, output),
        Command::Check { path } => {
            let input = read_input(path)?;
            let outcome = check_system(&input.system, ctx.tol, &ctx.settings, &CheckOptions::default())?;
            emit(out, &outcome.to_string())?;
            Ok(if outcome.all_passed() { Exit::Ok } else { Exit::Invariant })
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::input(anyhow::Error::new(e).context("writing output")))
}
