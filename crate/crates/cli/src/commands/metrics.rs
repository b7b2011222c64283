//! `tie metrics`: grade an annotated timeline.

use std::process::ExitCode;

use anyhow::Result;
use tie_timeline::{
    occurrence, order_accuracy, overlap_accuracy, schema, tcsr, temporal_error, Error as TlError,
    EventAnnotation,
};

use crate::config::RunConfig;
use crate::report::{fmt_float, write_atomic, Cell, Table};
use crate::MetricsArgs;

/// Print up to the first ten schema issues and fail, or propagate other
/// errors unchanged.
fn explain_schema<T>(result: tie_timeline::Result<T>) -> Result<T> {
    match result {
        Ok(v) => Ok(v),
        Err(TlError::Schema { path, issues }) => {
            eprintln!("schema violations in {path}:");
            for issue in issues.iter().take(10) {
                eprintln!("  {issue}");
            }
            if issues.len() > 10 {
                eprintln!("  ... and {} more", issues.len() - 10);
            }
            anyhow::bail!("{path}: {} schema issue(s)", issues.len())
        }
        Err(e) => Err(e.into()),
    }
}

fn per_event_row(ann: &EventAnnotation, tolerance: f64) -> Vec<Cell> {
    let o = ann.occurred();
    let te = match (ann.start_bias(), ann.end_bias()) {
        (Some(bs), Some(bt)) => {
            o * (bs.abs() + bt.abs()) / 2.0 + (1.0 - o) * ann.event.interval.duration()
        }
        _ => ann.event.interval.duration(),
    };
    let within = |b: Option<f64>| {
        ann.counted_as_occurred() && b.map(|v| v.abs() <= tolerance).unwrap_or(false)
    };
    vec![
        ann.event.id.clone().into(),
        ann.event.actor.clone().into(),
        ann.event.interval.start().into(),
        ann.event.interval.end().into(),
        o.into(),
        ann.start_bias().map_or(Cell::Str(String::new()), Cell::Float),
        ann.end_bias().map_or(Cell::Str(String::new()), Cell::Float),
        te.into(),
        i64::from(within(ann.start_bias())).into(),
        i64::from(within(ann.end_bias())).into(),
    ]
}

pub fn run(config: &RunConfig, args: &MetricsArgs) -> Result<ExitCode> {
    let timeline = explain_schema(schema::load_timeline(&args.timeline))?;
    let annotations = explain_schema(schema::load_annotations(&args.annotations, &timeline))?;

    let occ = occurrence(&annotations)?;
    let te = temporal_error(&annotations)?;
    let order = order_accuracy(&annotations);
    let overlap = overlap_accuracy(&annotations);
    let constraint = tcsr(&annotations, args.tolerance)?;

    let fmt_opt = |r: &tie_timeline::Result<f64>| match r {
        Ok(v) => fmt_float(*v),
        Err(_) => "n/a".to_string(),
    };

    println!("occurrence        {}", fmt_float(occ));
    println!("temporal_error_s  {}", fmt_float(te));
    println!("order_accuracy    {}", fmt_opt(&order));
    println!("overlap_accuracy  {}", fmt_opt(&overlap));
    println!("tcsr              {}", fmt_float(constraint.rate));
    let b = constraint.breakdown;
    println!("  start   {}/{}", b.start.0, b.start.1);
    println!("  end     {}/{}", b.end.0, b.end.1);
    println!("  order   {}/{}", b.order.0, b.order.1);
    println!("  overlap {}/{}", b.overlap.0, b.overlap.1);

    let mut summary = Table::new(vec!["metric", "value"]);
    summary.push(vec!["occurrence".into(), occ.into()]);
    summary.push(vec!["temporal_error_s".into(), te.into()]);
    summary.push(vec![
        "order_accuracy".into(),
        order.map_or(Cell::Str("n/a".into()), Cell::Float),
    ]);
    summary.push(vec![
        "overlap_accuracy".into(),
        overlap.map_or(Cell::Str("n/a".into()), Cell::Float),
    ]);
    summary.push(vec!["tcsr".into(), constraint.rate.into()]);
    for (name, (sat, total)) in [
        ("tcsr_start_satisfied", b.start),
        ("tcsr_end_satisfied", b.end),
        ("tcsr_order_satisfied", b.order),
        ("tcsr_overlap_satisfied", b.overlap),
    ] {
        summary.push(vec![name.into(), format!("{sat}/{total}").into()]);
    }

    let mut detail = Table::new(vec![
        "event_id",
        "actor",
        "target_start",
        "target_end",
        "occurred",
        "start_bias",
        "end_bias",
        "temporal_error",
        "start_within_tolerance",
        "end_within_tolerance",
    ]);
    for ann in &annotations {
        detail.push(per_event_row(ann, args.tolerance));
    }

    write_atomic(
        &config.report_path("metrics_summary"),
        &summary.render(config.format),
    )?;
    write_atomic(
        &config.report_path("metrics_events"),
        &detail.render(config.format),
    )?;
    Ok(ExitCode::SUCCESS)
}
