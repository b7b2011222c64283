//! `tie`: interval-aware rotary time encoding toolkit.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use crate::config::RunConfig;
use crate::report::ReportFormat;

#[derive(Parser)]
#[command(
    name = "tie",
    version,
    about = "Interval-aware rotary time encoding: verification sweeps, decay curves, robustness checks, and event-timeline metrics"
)]
struct Cli {
    /// Key/value config file with encoder parameters.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override a single config key, e.g. --set gamma=2.0 (repeatable).
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Master seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output directory for report files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Report file format.
    #[arg(long, global = true, value_enum)]
    format: Option<ReportFormat>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct VerifyArgs {
    /// Random (key, interval) pairs to compare.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Componentwise error the run must stay under to exit 0.
    #[arg(long, default_value_t = 1e-9)]
    threshold: f64,
    /// Gauss-Legendre nodes for the oracle expectation.
    #[arg(long, default_value_t = 64)]
    nodes: usize,
    /// Sampled interval duration range, seconds.
    #[arg(long, default_value_t = 0.25)]
    min_duration: f64,
    #[arg(long, default_value_t = 10.0)]
    max_duration: f64,
}

#[derive(Args)]
struct DecayArgs {
    /// Interval start, seconds.
    #[arg(long, allow_negative_numbers = true)]
    start: f64,
    /// Interval end, seconds.
    #[arg(long, allow_negative_numbers = true)]
    end: f64,
    /// Offset grid around the interval center, seconds.
    #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
    from: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    to: f64,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
}

#[derive(Args)]
struct RobustnessArgs {
    /// bounded: check the sensitivity bound; gaussian: record shift
    /// distributions over the sigma grid.
    #[arg(long, value_enum, default_value_t = commands::robustness::Mode::Bounded)]
    mode: commands::robustness::Mode,
    /// Almost-sure endpoint noise bound, seconds (bounded mode).
    #[arg(long, default_value_t = 0.25)]
    delta: f64,
    /// Trials per run (per sigma in gaussian mode).
    #[arg(long, default_value_t = 10000)]
    trials: usize,
    /// Gaussian sigma grid, seconds (gaussian mode).
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.25, 0.5, 1.0])]
    sigmas: Vec<f64>,
}

#[derive(Args)]
struct MetricsArgs {
    /// Timeline document (tie-timeline/1).
    timeline: PathBuf,
    /// Annotation overlay (tie-annotations/1).
    annotations: PathBuf,
    /// Boundary tolerance for start/end constraints, seconds.
    #[arg(long, default_value_t = 0.25)]
    tolerance: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the closed-form interval encoder against the quadrature oracle.
    Verify(VerifyArgs),
    /// Emit the expected self-similarity curve of an interval.
    Decay(DecayArgs),
    /// Endpoint-noise sweeps against the sensitivity bound.
    Robustness(RobustnessArgs),
    /// Grade an annotated timeline with the event-level metrics.
    Metrics(MetricsArgs),
    /// Check timeline files against the structural rules.
    Validate {
        /// A timeline file or a directory of `*.json` timelines.
        path: PathBuf,
    },
    /// Corpus statistics over a directory of timeline files.
    Stats {
        dir: PathBuf,
    },
}

fn resolve_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    for assignment in &cli.set {
        config.apply_set(assignment)?;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(out) = &cli.out {
        config.out = out.clone();
    }
    if let Some(format) = cli.format {
        config.format = format;
    }
    Ok(config)
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    let config = resolve_config(&cli)?;
    // every run records the effective configuration beside its reports
    report::write_atomic(&config.out.join("run_config.txt"), &config.to_document())?;
    match &cli.command {
        Command::Verify(args) => commands::verify::run(&config, args),
        Command::Decay(args) => commands::decay::run(&config, args),
        Command::Robustness(args) => commands::robustness::run(&config, args),
        Command::Metrics(args) => commands::metrics::run(&config, args),
        Command::Validate { path } => commands::validate::run(&config, path),
        Command::Stats { dir } => commands::stats::run(&config, dir),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
