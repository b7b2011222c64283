//! Sequence-level temporal alignment metrics.
//!
//! These operate on externally supplied feature sequences: dynamic time
//! warping similarity, 1-D earth mover distance between temporal mass
//! functions, and per-event windowed feature similarity.

use tie_core::{Scalar, TimeInterval};

use crate::error::{Error, Result};

/// Ground metric between feature vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Distance {
    #[default]
    Euclidean,
    /// `1 - cosine similarity`; zero-norm vectors count as fully distant.
    Cosine,
}

impl Distance {
    fn eval<T: Scalar>(self, a: &[T], b: &[T]) -> T {
        match self {
            Distance::Euclidean => a
                .iter()
                .zip(b)
                .map(|(&x, &y)| (x - y) * (x - y))
                .sum::<T>()
                .sqrt(),
            Distance::Cosine => T::one() - cosine_similarity(a, b),
        }
    }
}

fn cosine_similarity<T: Scalar>(a: &[T], b: &[T]) -> T {
    let dot = a.iter().zip(b).map(|(&x, &y)| x * y).sum::<T>();
    let na = a.iter().map(|&x| x * x).sum::<T>().sqrt();
    let nb = b.iter().map(|&x| x * x).sum::<T>().sqrt();
    if na == T::zero() || nb == T::zero() {
        T::zero()
    } else {
        dot / (na * nb)
    }
}

fn check_features<T: Scalar>(seq: &[Vec<T>], dim: usize) -> Result<()> {
    for v in seq {
        if v.len() != dim {
            return Err(Error::DimensionMismatch(v.len(), dim));
        }
    }
    Ok(())
}

/// Raw dynamic-time-warping cost between two feature sequences under the
/// step set right / down / diagonal.
pub fn dtw_cost<T: Scalar>(
    reference: &[Vec<T>],
    candidate: &[Vec<T>],
    distance: Distance,
) -> Result<T> {
    if reference.is_empty() || candidate.is_empty() {
        return Err(Error::EmptySequence);
    }
    let dim = reference[0].len();
    check_features(reference, dim)?;
    check_features(candidate, dim)?;

    let cols = candidate.len();
    let mut prev = vec![T::infinity(); cols + 1];
    let mut row = vec![T::infinity(); cols + 1];
    prev[0] = T::zero();
    for r in reference {
        row[0] = T::infinity();
        for (j, c) in candidate.iter().enumerate() {
            let best = prev[j].min(prev[j + 1]).min(row[j]);
            row[j + 1] = best + distance.eval(r, c);
        }
        std::mem::swap(&mut prev, &mut row);
    }
    Ok(prev[cols])
}

/// Normalized DTW similarity in `(0, 1]`: `exp(-cost / reference length)`.
/// Identical sequences score exactly 1.
pub fn ndtw<T: Scalar>(reference: &[Vec<T>], candidate: &[Vec<T>], distance: Distance) -> Result<T> {
    let cost = dtw_cost(reference, candidate, distance)?;
    Ok((-cost / T::of_usize(reference.len())).exp())
}

/// 1-D earth mover (Wasserstein-1) distance between two mass functions on
/// a shared non-decreasing time grid, as the integral of the CDF gap.
/// Masses are normalized to total 1 internally.
pub fn emd_1d<T: Scalar>(grid: &[T], mass_a: &[T], mass_b: &[T]) -> Result<T> {
    if grid.is_empty() {
        return Err(Error::EmptySequence);
    }
    for mass in [mass_a, mass_b] {
        if mass.len() != grid.len() {
            return Err(Error::GridMismatch {
                grid: grid.len(),
                mass: mass.len(),
            });
        }
    }
    for w in grid.windows(2) {
        if w[1] < w[0] {
            return Err(Error::UnsortedGrid);
        }
    }
    let mut totals = [T::zero(); 2];
    for (i, mass) in [mass_a, mass_b].into_iter().enumerate() {
        for &m in mass {
            if m < T::zero() || !m.is_finite() {
                return Err(Error::NegativeMass);
            }
            totals[i] += m;
        }
        if totals[i] == T::zero() {
            return Err(Error::ZeroMass);
        }
    }

    let mut acc_a = T::zero();
    let mut acc_b = T::zero();
    let mut emd = T::zero();
    for i in 0..grid.len() - 1 {
        acc_a += mass_a[i] / totals[0];
        acc_b += mass_b[i] / totals[1];
        emd += (acc_a - acc_b).abs() * (grid[i + 1] - grid[i]);
    }
    Ok(emd)
}

/// Default earth-mover operand for a timeline: the fraction of events
/// active at each grid point over `[0, clip_duration]`, as `(grid, mass)`.
/// [`emd_1d`] normalizes the mass, so raw counts are fine.
pub fn event_coverage_mass(
    timeline: &crate::event::Timeline,
    step: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::BadTolerance(step));
    }
    let points = (timeline.clip_duration() / step).round() as usize;
    let grid: Vec<f64> = (0..=points).map(|i| i as f64 * step).collect();
    let mass = grid
        .iter()
        .map(|&t| {
            timeline
                .events()
                .iter()
                .filter(|e| e.interval.contains(t))
                .count() as f64
        })
        .collect();
    Ok((grid, mass))
}

/// Mean cosine similarity between each event's feature and the features of
/// frames whose timestamps fall inside the event interval (endpoints
/// inclusive). Events with no in-window frame report `None`.
pub fn event_window_similarity<T: Scalar>(
    frames: &[(T, Vec<T>)],
    events: &[(Vec<T>, TimeInterval<T>)],
) -> Result<Vec<Option<T>>> {
    if let Some((_, first)) = frames.first() {
        let dim = first.len();
        for (_, f) in frames {
            if f.len() != dim {
                return Err(Error::DimensionMismatch(f.len(), dim));
            }
        }
        for (feat, _) in events {
            if feat.len() != dim {
                return Err(Error::DimensionMismatch(feat.len(), dim));
            }
        }
    }
    Ok(events
        .iter()
        .map(|(feature, interval)| {
            let mut count = 0usize;
            let mut sum = T::zero();
            for (t, frame) in frames {
                if interval.contains(*t) {
                    sum += cosine_similarity(feature, frame);
                    count += 1;
                }
            }
            (count > 0).then(|| sum / T::of_usize(count))
        })
        .collect())
}
