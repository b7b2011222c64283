//! Event-level grading of annotated timelines.
//!
//! Five metrics summarize how faithfully a generated clip realizes its
//! requested events: occurrence, temporal error, order accuracy, overlap
//! accuracy, and the overall constraint satisfaction rate. All are driven
//! by the annotator-averaged occurrence values and boundary biases carried
//! on [`EventAnnotation`].

use crate::error::{Error, Result};
use crate::event::{EventAnnotation, CENTER_TIE_EPS};

/// Boundary tolerance both start and end deviations are graded against.
pub const DEFAULT_TOLERANCE: f64 = 0.25;

/// Mean occurrence over the requested events.
pub fn occurrence(annotations: &[EventAnnotation]) -> Result<f64> {
    if annotations.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(annotations.iter().map(EventAnnotation::occurred).sum::<f64>() / annotations.len() as f64)
}

/// Mean boundary deviation in seconds, with the requested duration as the
/// missing-event penalty.
///
/// Fractional occurrence interpolates linearly between the two regimes:
/// `o*(|b_s|+|b_t|)/2 + (1-o)*duration`.
pub fn temporal_error(annotations: &[EventAnnotation]) -> Result<f64> {
    if annotations.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut total = 0.0;
    for ann in annotations {
        let o = ann.occurred();
        let observed = if o > 0.0 {
            let (bs, bt) = match (ann.start_bias(), ann.end_bias()) {
                (Some(bs), Some(bt)) => (bs, bt),
                _ => {
                    return Err(Error::MissingBias {
                        id: ann.event.id.clone(),
                    })
                }
            };
            (bs.abs() + bt.abs()) / 2.0
        } else {
            0.0
        };
        total += o * observed + (1.0 - o) * ann.event.interval.duration();
    }
    Ok(total / annotations.len() as f64)
}

fn order_sign(a: f64, b: f64) -> i8 {
    if a < b {
        -1
    } else if a > b {
        1
    } else {
        0
    }
}

/// Pairs whose requested centers actually differ; ties carry no ordering.
fn ordered_pairs(annotations: &[EventAnnotation]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..annotations.len() {
        for j in i + 1..annotations.len() {
            let ci = annotations[i].event.interval.center();
            let cj = annotations[j].event.interval.center();
            if (ci - cj).abs() >= CENTER_TIE_EPS {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

fn order_pair_correct(a: &EventAnnotation, b: &EventAnnotation) -> bool {
    if !(a.counted_as_occurred() && b.counted_as_occurred()) {
        return false;
    }
    match (a.observed_center(), b.observed_center()) {
        (Some(ca), Some(cb)) => {
            order_sign(ca, cb)
                == order_sign(a.event.interval.center(), b.event.interval.center())
        }
        _ => false,
    }
}

/// Fraction of event pairs whose observed before/after relation matches the
/// requested one. Pairs with a missing event count as incorrect.
pub fn order_accuracy(annotations: &[EventAnnotation]) -> Result<f64> {
    if annotations.len() < 2 {
        return Err(Error::TooFewEvents);
    }
    let pairs = ordered_pairs(annotations);
    if pairs.is_empty() {
        return Err(Error::NoComparablePairs);
    }
    let correct = pairs
        .iter()
        .filter(|&&(i, j)| order_pair_correct(&annotations[i], &annotations[j]))
        .count();
    Ok(correct as f64 / pairs.len() as f64)
}

/// Pairs requested to overlap: strict positive-length intersection of the
/// target intervals.
fn overlapping_pairs(annotations: &[EventAnnotation]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..annotations.len() {
        for j in i + 1..annotations.len() {
            let a = &annotations[i].event.interval;
            let b = &annotations[j].event.interval;
            if a.end().min(b.end()) > a.start().max(b.start()) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

fn overlap_pair_correct(a: &EventAnnotation, b: &EventAnnotation) -> bool {
    if !(a.counted_as_occurred() && b.counted_as_occurred()) {
        return false;
    }
    match (a.observed_span(), b.observed_span()) {
        (Some((sa, ta)), Some((sb, tb))) => ta.min(tb) > sa.max(sb),
        _ => false,
    }
}

/// Fraction of requested-overlap pairs still overlapping in the observed
/// spans. Errors when the prompt has no overlapping pair at all, which
/// callers should report as not-applicable rather than zero.
pub fn overlap_accuracy(annotations: &[EventAnnotation]) -> Result<f64> {
    let pairs = overlapping_pairs(annotations);
    if pairs.is_empty() {
        return Err(Error::NoOverlappingPairs);
    }
    let correct = pairs
        .iter()
        .filter(|&&(i, j)| overlap_pair_correct(&annotations[i], &annotations[j]))
        .count();
    Ok(correct as f64 / pairs.len() as f64)
}

/// Satisfied/total counts per constraint category.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstraintBreakdown {
    pub start: (usize, usize),
    pub end: (usize, usize),
    pub order: (usize, usize),
    pub overlap: (usize, usize),
}

impl ConstraintBreakdown {
    pub fn satisfied(&self) -> usize {
        self.start.0 + self.end.0 + self.order.0 + self.overlap.0
    }

    pub fn total(&self) -> usize {
        self.start.1 + self.end.1 + self.order.1 + self.overlap.1
    }
}

/// Temporal constraint satisfaction: rate plus the per-category breakdown.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TcsrReport {
    pub rate: f64,
    pub breakdown: ConstraintBreakdown,
}

/// Grade every start, end, order, and overlap constraint at the given
/// boundary tolerance (inclusive comparison).
///
/// The constraint set holds two boundary constraints per event, one order
/// constraint per comparable pair, and one overlap constraint per
/// requested-overlap pair.
pub fn tcsr(annotations: &[EventAnnotation], tolerance: f64) -> Result<TcsrReport> {
    if annotations.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !tolerance.is_finite() || tolerance < 0.0 {
        return Err(Error::BadTolerance(tolerance));
    }

    let bias_within =
        |bias: Option<f64>| -> bool { bias.map(|b| b.abs() <= tolerance).unwrap_or(false) };

    let mut start_sat = 0;
    let mut end_sat = 0;
    for ann in annotations {
        if ann.counted_as_occurred() {
            if bias_within(ann.start_bias()) {
                start_sat += 1;
            }
            if bias_within(ann.end_bias()) {
                end_sat += 1;
            }
        }
    }

    let order = ordered_pairs(annotations);
    let order_sat = order
        .iter()
        .filter(|&&(i, j)| order_pair_correct(&annotations[i], &annotations[j]))
        .count();

    let overlap = overlapping_pairs(annotations);
    let overlap_sat = overlap
        .iter()
        .filter(|&&(i, j)| overlap_pair_correct(&annotations[i], &annotations[j]))
        .count();

    let breakdown = ConstraintBreakdown {
        start: (start_sat, annotations.len()),
        end: (end_sat, annotations.len()),
        order: (order_sat, order.len()),
        overlap: (overlap_sat, overlap.len()),
    };
    Ok(TcsrReport {
        rate: breakdown.satisfied() as f64 / breakdown.total() as f64,
        breakdown,
    })
}
