//! Command-line surface over the analysis library.
//!
//! `pointscatter <task> --config <file> [--out <path>] [--format csv|json]
//! [--grid N] [--tol X]`. Flags override the corresponding config fields.
//! Exit codes: 0 success, 2 configuration or physics validation error,
//! 3 numerical non-convergence (partial results are written and flagged).

#![forbid(unsafe_code)]

mod config;
mod figures;
mod output;
mod tasks;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pointscatter_core::{Error, Result};

use crate::config::RunConfig;
use crate::output::{render, write_rendered, Format, Outcome};
use crate::tasks::Effective;

#[derive(Parser)]
#[command(
    name = "pointscatter",
    version,
    about = "Spectral and scattering analysis of two point interactions in the 1D Dirac equation"
)]
struct Cli {
    #[command(subcommand)]
    task: Task,
}

#[derive(Subcommand)]
enum Task {
    /// Emit both interaction representations plus permeability, as JSON
    Convert(CommonArgs),
    /// Locate gap bound states and the threshold detections
    BoundStates(CommonArgs),
    /// Detect threshold states at the gap edges
    Critical(CommonArgs),
    /// Hunt resonance poles in the lower half plane
    Resonances(CommonArgs),
    /// Sweep scattering amplitudes over an energy grid
    Scatter(CommonArgs),
    /// Regenerate a figure dataset (ids 1..10, fixed m=2, l=1)
    Figure(FigureArgs),
    /// Zero-separation limit matrix and its symmetry class
    Limit(CommonArgs),
    /// Compare bound spectra against the nonrelativistic model
    NonrelCheck(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// JSON run configuration
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
    /// Output path (defaults to the config output.path, then stdout)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format: csv or json
    #[arg(long, value_name = "FMT")]
    format: Option<String>,
    /// Grid-size override (scan points, scatter rows, or seed columns)
    #[arg(long, value_name = "N")]
    grid: Option<usize>,
    /// Tolerance override (task-dependent residual or detection tolerance)
    #[arg(long, value_name = "X")]
    tol: Option<f64>,
}

#[derive(Args)]
struct FigureArgs {
    /// Figure id 1..10; overrides the config figure field
    id: Option<u32>,
    /// JSON run configuration (optional: figures run at fixed geometry)
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Output path (defaults to the config output.path, then stdout)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format: csv or json
    #[arg(long, value_name = "FMT")]
    format: Option<String>,
    /// Accepted for interface uniformity; figures use fixed grids
    #[arg(long, value_name = "N")]
    grid: Option<usize>,
    /// Accepted for interface uniformity; figures use fixed tolerances
    #[arg(long, value_name = "X")]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    pointscatter_core::configure_threads_from_env();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NoConvergence(_)
        | Error::GridTooCoarse(_)
        | Error::SingularMatrix(_)
        | Error::Internal(_) => 3,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.task {
        Task::Convert(args) => execute(args, tasks::convert),
        Task::BoundStates(args) => execute(args, tasks::bound_states),
        Task::Critical(args) => execute(args, tasks::critical),
        Task::Resonances(args) => execute(args, tasks::resonances),
        Task::Scatter(args) => execute(args, tasks::scatter),
        Task::Limit(args) => execute(args, tasks::limit),
        Task::NonrelCheck(args) => execute(args, tasks::nonrel_check),
        Task::Figure(args) => {
            let config = match &args.config {
                Some(path) => Some(RunConfig::load(path)?),
                None => None,
            };
            let eff = Effective {
                config,
                grid: args.grid,
                tol: args.tol,
                figure_id: args.id,
            };
            let outcome = tasks::figure(&eff)?;
            finish(&eff, args.out, args.format.as_deref(), outcome)
        }
    }
}

fn execute(args: CommonArgs, runner: fn(&Effective) -> Result<Outcome>) -> Result<u8> {
    let config = RunConfig::load(&args.config)?;
    let eff = Effective {
        config: Some(config),
        grid: args.grid,
        tol: args.tol,
        figure_id: None,
    };
    let outcome = runner(&eff)?;
    finish(&eff, args.out, args.format.as_deref(), outcome)
}

fn finish(
    eff: &Effective,
    out_flag: Option<PathBuf>,
    format_flag: Option<&str>,
    outcome: Outcome,
) -> Result<u8> {
    let cfg_output = eff.config.as_ref().map(|c| &c.output);
    let format = match format_flag.or(cfg_output.and_then(|o| o.format.as_deref())) {
        Some(text) => Format::parse(text)?,
        None => Format::Csv,
    };
    let out = out_flag.or_else(|| cfg_output.and_then(|o| o.path.as_ref().map(PathBuf::from)));
    let text = render(&outcome.output, format);
    write_rendered(&text, out.as_deref())?;
    Ok(outcome.exit)
}
