//! `tie validate`: structural rule checks over timeline files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use tie_timeline::{schema, validate_timeline};

use crate::config::RunConfig;
use crate::report::{write_atomic, Table};

/// Timeline files at `path`: the file itself, or every `*.json` in the
/// directory, sorted for deterministic output.
pub fn collect_timeline_files(path: &Path) -> Result<Vec<PathBuf>> {
    if path.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(path)
            .with_context(|| format!("reading directory {}", path.display()))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
            .collect();
        files.sort();
        anyhow::ensure!(
            !files.is_empty(),
            "no *.json timeline files in {}",
            path.display()
        );
        Ok(files)
    } else {
        Ok(vec![path.to_path_buf()])
    }
}

pub fn run(config: &RunConfig, path: &Path) -> Result<ExitCode> {
    let files = collect_timeline_files(path)?;
    let mut table = Table::new(vec!["file", "event_id", "rule", "detail"]);
    let mut total = 0usize;

    for file in &files {
        let timeline = schema::load_timeline(file)?;
        let violations = validate_timeline(&timeline);
        for violation in &violations {
            println!("{}: {}", file.display(), violation);
            table.push(vec![
                file.display().to_string().into(),
                violation.event_id.clone().into(),
                violation.rule.to_string().into(),
                violation.detail.clone().into(),
            ]);
        }
        total += violations.len();
    }

    write_atomic(
        &config.report_path("validate"),
        &table.render(config.format),
    )?;
    println!(
        "validate: {} file(s), {} violation(s)",
        files.len(),
        total
    );
    Ok(if total == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
