//! `tie verify`: closed form vs quadrature oracle.

use std::process::ExitCode;

use anyhow::Result;
use tie_core::kernel::{verify_closed_form, VerifySettings};

use crate::config::RunConfig;
use crate::report::{fmt_float, write_atomic, Cell, Table};
use crate::VerifyArgs;

pub fn run(config: &RunConfig, args: &VerifyArgs) -> Result<ExitCode> {
    let settings = VerifySettings {
        trials: args.trials,
        dim: config.dim,
        base: config.base,
        config: config.encoder_config()?,
        duration_range: (args.min_duration, args.max_duration),
        quadrature_nodes: args.nodes,
        seed: config.seed,
        ..VerifySettings::default()
    };
    let report = verify_closed_form(&settings)?;

    let mut trials = Table::new(vec![
        "trial",
        "start",
        "end",
        "scaled_radius",
        "max_abs_error",
        "status",
    ]);
    for case in &report.cases {
        trials.push(vec![
            case.index.into(),
            case.start.into(),
            case.end.into(),
            case.scaled_radius.into(),
            case.error.into(),
            "ok".into(),
        ]);
    }
    for (index, reason) in &report.skipped {
        trials.push(vec![
            (*index).into(),
            Cell::Float(f64::NAN),
            Cell::Float(f64::NAN),
            Cell::Float(f64::NAN),
            Cell::Float(f64::NAN),
            format!("skipped: {reason}").into(),
        ]);
    }

    let passed = report.passes(args.threshold);
    let mut summary = Table::new(vec!["key", "value"]);
    summary.push(vec!["trials_requested".into(), report.trials_requested.into()]);
    summary.push(vec!["trials_run".into(), report.trials_run.into()]);
    summary.push(vec!["skipped".into(), report.skipped.len().into()]);
    summary.push(vec!["max_error".into(), report.max_error.into()]);
    summary.push(vec!["threshold".into(), args.threshold.into()]);
    if let Some(worst) = &report.worst {
        summary.push(vec!["worst_trial".into(), worst.index.into()]);
        summary.push(vec!["worst_start".into(), worst.start.into()]);
        summary.push(vec!["worst_end".into(), worst.end.into()]);
    }
    summary.push(vec!["pass".into(), i64::from(passed).into()]);

    write_atomic(
        &config.report_path("verify_trials"),
        &trials.render(config.format),
    )?;
    write_atomic(
        &config.report_path("verify_summary"),
        &summary.render(config.format),
    )?;

    println!(
        "verify: {} trials, {} skipped, max componentwise error {} (threshold {})",
        report.trials_run,
        report.skipped.len(),
        fmt_float(report.max_error),
        fmt_float(args.threshold),
    );
    if passed {
        println!("verify: PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verify: FAIL");
        Ok(ExitCode::FAILURE)
    }
}
