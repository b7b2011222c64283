//! `tie decay`: expected self-similarity of an interval over an offset grid.

use std::process::ExitCode;

use anyhow::Result;
use tie_core::scoring::decay_curve;
use tie_core::Interval64;

use crate::config::RunConfig;
use crate::report::{fmt_float, write_atomic, Table};
use crate::DecayArgs;

pub fn run(config: &RunConfig, args: &DecayArgs) -> Result<ExitCode> {
    let interval = Interval64::new(args.start, args.end)?;
    anyhow::ensure!(
        args.step > 0.0 && args.to >= args.from,
        "offset grid needs step > 0 and to >= from"
    );
    let steps = ((args.to - args.from) / args.step).round() as usize;
    let offsets: Vec<f64> = (0..=steps).map(|i| args.from + i as f64 * args.step).collect();

    let schedule = config.schedule()?;
    let encoder = config.encoder_config()?;
    let curve = decay_curve(&interval, &schedule, &encoder, &offsets)?;

    let mut table = Table::new(vec!["offset", "value"]);
    for &(offset, value) in &curve {
        table.push(vec![offset.into(), value.into()]);
    }
    write_atomic(&config.report_path("decay"), &table.render(config.format))?;

    let grid_min = curve.iter().map(|&(_, v)| v).fold(f64::INFINITY, f64::min);
    let radius = interval.radius();
    let support_min = curve
        .iter()
        .filter(|&&(offset, _)| offset.abs() <= radius + 1e-12)
        .map(|&(_, v)| v)
        .fold(f64::INFINITY, f64::min);

    println!(
        "decay: interval [{}, {}] s, {} offsets in [{}, {}] s",
        args.start,
        args.end,
        curve.len(),
        args.from,
        args.to
    );
    println!("decay: min over grid {}", fmt_float(grid_min));
    if support_min.is_finite() {
        println!(
            "decay: min over event support (|offset| <= {radius} s) {}",
            fmt_float(support_min)
        );
    }
    Ok(ExitCode::SUCCESS)
}
