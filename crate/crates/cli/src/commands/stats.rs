//! `tie stats`: corpus statistics over a directory of timelines.

use std::path::Path;
use std::process::ExitCode;

use anyhow::Result;
use tie_timeline::{corpus_stats, schema};

use crate::commands::validate::collect_timeline_files;
use crate::config::RunConfig;
use crate::report::{fmt_float, write_atomic, Table};

pub fn run(config: &RunConfig, dir: &Path) -> Result<ExitCode> {
    let files = collect_timeline_files(dir)?;
    let timelines = files
        .iter()
        .map(|f| schema::load_timeline(f))
        .collect::<tie_timeline::Result<Vec<_>>>()?;
    let stats = corpus_stats(&timelines)?;

    let mut table = Table::new(vec![
        "clips",
        "events_per_clip",
        "mean_event_duration_s",
        "total_events",
        "total_duration_s",
        "total_caption_chars",
        "overlap_prob",
    ]);
    table.push(vec![
        stats.clip_count.into(),
        stats.events_per_clip.into(),
        stats.mean_event_duration.into(),
        stats.total_events.into(),
        stats.total_duration.into(),
        stats.total_caption_chars.into(),
        stats.overlap_prob.into(),
    ]);
    write_atomic(&config.report_path("stats"), &table.render(config.format))?;

    println!(
        "stats: {} clips | events/clip {} | event duration {} s | events {} | duration {} s | caption chars {} | overlap prob {}",
        stats.clip_count,
        fmt_float(stats.events_per_clip),
        fmt_float(stats.mean_event_duration),
        stats.total_events,
        fmt_float(stats.total_duration),
        stats.total_caption_chars,
        fmt_float(stats.overlap_prob),
    );
    Ok(ExitCode::SUCCESS)
}
