//! Run configuration: a human-editable `key = value` document plus
//! `--set key=value` overrides.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use tie_core::{Config64, PairLayout, Schedule64};

use crate::report::ReportFormat;

/// Encoder parameters, seed, and output options for every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub dim: usize,
    pub base: f64,
    pub gamma: f64,
    pub alpha: f64,
    pub norm_epsilon: f64,
    pub layout: PairLayout,
    pub seed: u64,
    pub out: PathBuf,
    pub format: ReportFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            dim: 128,
            base: 10000.0,
            gamma: 4.0,
            alpha: 1.0,
            norm_epsilon: 1e-6,
            layout: PairLayout::AdjacentPairs,
            seed: 42,
            out: PathBuf::from("reports"),
            format: ReportFormat::Csv,
        }
    }
}

fn layout_name(layout: PairLayout) -> &'static str {
    match layout {
        PairLayout::AdjacentPairs => "adjacent-pairs",
        PairLayout::HalfSplit => "half-split",
    }
}

impl RunConfig {
    /// Parse a config document: one `key = value` per line, `#` comments.
    /// Unknown keys are errors; missing keys keep their defaults.
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut config = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected `key = value`", lineno + 1))?;
            config
                .set(key.trim(), value.trim())
                .with_context(|| format!("line {}", lineno + 1))?;
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::parse_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Apply one `key=value` override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "dim" => self.dim = value.parse().context("dim must be an integer")?,
            "base" => self.base = value.parse().context("base must be a number")?,
            "gamma" => self.gamma = value.parse().context("gamma must be a number")?,
            "alpha" => self.alpha = value.parse().context("alpha must be a number")?,
            "norm_epsilon" => {
                self.norm_epsilon = value.parse().context("norm_epsilon must be a number")?
            }
            "layout" => {
                self.layout = match value {
                    "adjacent-pairs" => PairLayout::AdjacentPairs,
                    "half-split" => PairLayout::HalfSplit,
                    other => bail!("unknown layout `{other}` (adjacent-pairs or half-split)"),
                }
            }
            "seed" => self.seed = value.parse().context("seed must be an unsigned integer")?,
            "out" => self.out = PathBuf::from(value),
            "format" => {
                self.format = ReportFormat::from_name(value)
                    .ok_or_else(|| anyhow!("unknown format `{value}` (csv or jsonl)"))?
            }
            other => bail!("unknown config key `{other}`"),
        }
        Ok(())
    }

    /// Apply a `--set key=value` argument.
    pub fn apply_set(&mut self, assignment: &str) -> Result<()> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| anyhow!("--set expects key=value, got `{assignment}`"))?;
        self.set(key.trim(), value.trim())
    }

    /// Serialize every key; parsing the result reproduces the config.
    pub fn to_document(&self) -> String {
        format!(
            "dim = {}\nbase = {}\ngamma = {}\nalpha = {}\nnorm_epsilon = {}\nlayout = {}\nseed = {}\nout = {}\nformat = {}\n",
            self.dim,
            self.base,
            self.gamma,
            self.alpha,
            self.norm_epsilon,
            layout_name(self.layout),
            self.seed,
            self.out.display(),
            self.format.name(),
        )
    }

    pub fn schedule(&self) -> Result<Schedule64> {
        Ok(Schedule64::new(self.base, self.dim)?)
    }

    pub fn encoder_config(&self) -> Result<Config64> {
        Ok(Config64::new(
            self.gamma,
            self.alpha,
            self.norm_epsilon,
            self.layout,
        )?)
    }

    /// Report file path `<out>/<stem>.<format extension>`.
    pub fn report_path(&self, stem: &str) -> PathBuf {
        self.out.join(format!("{stem}.{}", self.format.extension()))
    }
}
