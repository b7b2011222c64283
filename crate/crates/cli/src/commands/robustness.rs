//! `tie robustness`: endpoint-noise sweeps.

use std::process::ExitCode;

use anyhow::Result;
use clap::ValueEnum;
use tie_core::robustness::{run_noise_sweep, NoiseMode, PerturbationSpec, SweepSettings};

use crate::config::RunConfig;
use crate::report::{fmt_float, write_atomic, Cell, Table};
use crate::RobustnessArgs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Bounded,
    Gaussian,
}

fn row_columns() -> Vec<&'static str> {
    vec![
        "sigma",
        "trial",
        "center",
        "radius",
        "eps_start",
        "eps_end",
        "score_shift",
        "bound",
        "c_min",
        "ratio",
    ]
}

fn opt_float(v: Option<f64>) -> Cell {
    v.map_or(Cell::Str(String::new()), Cell::Float)
}

pub fn run(config: &RunConfig, args: &RobustnessArgs) -> Result<ExitCode> {
    let schedule = config.schedule()?;
    let encoder = config.encoder_config()?;
    let settings = SweepSettings::default();

    match args.mode {
        Mode::Bounded => {
            let noise = PerturbationSpec {
                delta: args.delta,
                sigma: 0.0,
                trials: args.trials,
                seed: config.seed,
            };
            let report =
                run_noise_sweep(&noise, NoiseMode::Bounded, &schedule, &encoder, &settings)?;

            let mut rows = Table::new(row_columns());
            for row in &report.rows {
                rows.push(vec![
                    Cell::Str(String::new()),
                    row.index.into(),
                    row.center.into(),
                    row.radius.into(),
                    row.eps_start.into(),
                    row.eps_end.into(),
                    row.score_shift.into(),
                    opt_float(row.bound),
                    opt_float(row.c_min),
                    opt_float(row.ratio),
                ]);
            }
            write_atomic(
                &config.report_path("robustness_trials"),
                &rows.render(config.format),
            )?;

            let mut summary = Table::new(vec!["key", "value"]);
            summary.push(vec!["mode".into(), "bounded".into()]);
            summary.push(vec!["delta".into(), args.delta.into()]);
            summary.push(vec!["trials".into(), report.rows.len().into()]);
            summary.push(vec!["skipped".into(), report.skipped.len().into()]);
            summary.push(vec!["violations".into(), report.violations.into()]);
            summary.push(vec!["worst_ratio".into(), report.worst_ratio.into()]);
            write_atomic(
                &config.report_path("robustness_summary"),
                &summary.render(config.format),
            )?;

            println!(
                "robustness: bounded sweep, {} trials, {} skipped, {} violation(s), worst shift/bound ratio {}",
                report.rows.len(),
                report.skipped.len(),
                report.violations,
                fmt_float(report.worst_ratio),
            );
            if report.violations == 0 {
                println!("robustness: PASS");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("robustness: FAIL");
                Ok(ExitCode::FAILURE)
            }
        }
        Mode::Gaussian => {
            let mut rows = Table::new(row_columns());
            let mut summary = Table::new(vec!["sigma", "trials", "skipped", "mean_shift", "median_shift", "max_shift"]);
            for &sigma in &args.sigmas {
                let noise = PerturbationSpec {
                    delta: 0.0,
                    sigma,
                    trials: args.trials,
                    seed: config.seed,
                };
                let report =
                    run_noise_sweep(&noise, NoiseMode::Gaussian, &schedule, &encoder, &settings)?;
                let mut shifts: Vec<f64> =
                    report.rows.iter().map(|r| r.score_shift).collect();
                shifts.sort_by(f64::total_cmp);
                let mean = shifts.iter().sum::<f64>() / shifts.len().max(1) as f64;
                let median = if shifts.is_empty() {
                    f64::NAN
                } else {
                    shifts[shifts.len() / 2]
                };
                let max = shifts.last().copied().unwrap_or(f64::NAN);
                summary.push(vec![
                    sigma.into(),
                    report.rows.len().into(),
                    report.skipped.len().into(),
                    mean.into(),
                    median.into(),
                    max.into(),
                ]);
                for row in &report.rows {
                    rows.push(vec![
                        sigma.into(),
                        row.index.into(),
                        row.center.into(),
                        row.radius.into(),
                        row.eps_start.into(),
                        row.eps_end.into(),
                        row.score_shift.into(),
                        opt_float(None),
                        opt_float(None),
                        opt_float(None),
                    ]);
                }
                println!(
                    "robustness: gaussian sigma {} -> mean |shift| {}, median {}, max {}",
                    sigma,
                    fmt_float(mean),
                    fmt_float(median),
                    fmt_float(max)
                );
            }
            write_atomic(
                &config.report_path("robustness_trials"),
                &rows.render(config.format),
            )?;
            write_atomic(
                &config.report_path("robustness_summary"),
                &summary.render(config.format),
            )?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
