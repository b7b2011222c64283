//! Point-to-interval attention scores.
//!
//! Frame tokens are temporal points carrying query vectors; event tokens
//! are intervals carrying key vectors. A score is the inner product of the
//! encoded query and encoded key. Queries are encoded to match the event
//! encoder's geometry: full-dimension rotation for center/interval keys,
//! per-half rotation (a degenerate boundary encoding at the query time) for
//! boundary keys.

use crate::encoding::{
    dote_encode, normalization_constant, rope_rotate, rote_encode, sinc, EncoderConfig,
    FrequencySchedule, TimeInterval,
};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// How an event key is encoded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EventEncoder {
    /// Point-wise rotation at the interval center.
    RopeAtCenter,
    /// Closed-form interval encoding.
    #[default]
    Rote,
    /// Boundary-only encoding.
    Dote,
}

/// Frame tokens: strictly increasing timestamps with one query per frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameGrid<T> {
    times: Vec<T>,
    queries: Vec<Vec<T>>,
}

impl<T: Scalar> FrameGrid<T> {
    pub fn new(times: Vec<T>, queries: Vec<Vec<T>>) -> Result<Self> {
        if times.len() != queries.len() {
            return Err(Error::GridShapeMismatch {
                times: times.len(),
                queries: queries.len(),
            });
        }
        for (i, &t) in times.iter().enumerate() {
            if !t.is_finite() {
                return Err(Error::NonFiniteTime(t.lossy()));
            }
            if i > 0 && t <= times[i - 1] {
                return Err(Error::NonMonotonicTimes(i));
            }
        }
        Ok(Self { times, queries })
    }

    /// Uniform grid of token midpoints: frame `i` of `frames` sits at
    /// `(i + 1/2) * duration / frames`.
    pub fn uniform(duration: T, queries: Vec<Vec<T>>) -> Result<Self> {
        let n = queries.len();
        let step = duration / T::of_usize(n.max(1));
        let times = (0..n)
            .map(|i| (T::of_usize(i) + T::of(0.5)) * step)
            .collect();
        Self::new(times, queries)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn queries(&self) -> &[Vec<T>] {
        &self.queries
    }
}

/// An event key with its interval and encoder choice.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredEvent<T> {
    pub key: Vec<T>,
    pub interval: TimeInterval<T>,
    pub encoder: EventEncoder,
}

/// Events scored against a frame grid. Keys must agree in dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct EventSet<T> {
    events: Vec<ScoredEvent<T>>,
}

impl<T: Scalar> EventSet<T> {
    pub fn new(events: Vec<ScoredEvent<T>>) -> Result<Self> {
        if let Some(first) = events.first() {
            let dim = first.key.len();
            for e in &events {
                if e.key.len() != dim {
                    return Err(Error::LengthMismatch {
                        len: e.key.len(),
                        dim,
                    });
                }
            }
        }
        Ok(Self { events })
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[ScoredEvent<T>] {
        &self.events
    }
}

/// Frames x events score table, with optional row softmax.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix<T> {
    pub frame_times: Vec<T>,
    pub values: Vec<Vec<T>>,
    pub row_softmax: Option<Vec<Vec<T>>>,
}

impl<T: Scalar> ScoreMatrix<T> {
    /// Plot-ready CSV: one row per frame time, one column per event index.
    pub fn to_csv(&self) -> String {
        let cols = self.values.first().map_or(0, Vec::len);
        let mut out = String::from("frame_time");
        for j in 0..cols {
            out.push_str(&format!(",event_{j}"));
        }
        out.push('\n');
        for (t, row) in self.frame_times.iter().zip(&self.values) {
            out.push_str(&format!("{:.11e}", t.lossy()));
            for v in row {
                out.push_str(&format!(",{:.11e}", v.lossy()));
            }
            out.push('\n');
        }
        out
    }
}

/// Conventional attention temperature, `1/sqrt(d)`.
pub fn default_temperature<T: Scalar>(dim: usize) -> T {
    T::one() / T::of_usize(dim).sqrt()
}

/// Inner product of the encoded query (a point at `t_q`) and the encoded
/// event key.
pub fn score_point_to_interval<T: Scalar>(
    q: &[T],
    k: &[T],
    t_q: T,
    interval: &TimeInterval<T>,
    encoder: EventEncoder,
    schedule: &FrequencySchedule<T>,
    config: &EncoderConfig<T>,
) -> Result<T> {
    let key = match encoder {
        EventEncoder::RopeAtCenter => rope_rotate(k, interval.center(), schedule, config)?,
        EventEncoder::Rote => rote_encode(k, interval, schedule, config)?,
        EventEncoder::Dote => dote_encode(k, interval, schedule, config)?,
    };
    let query = match encoder {
        EventEncoder::Dote => dote_encode(q, &TimeInterval::point(t_q)?, schedule, config)?,
        _ => rope_rotate(q, t_q, schedule, config)?,
    };
    Ok(query.dot(key.as_slice()))
}

/// Score every frame against every event. `temperature`, when given, also
/// fills in row-stochastic softmax weights.
///
/// Rows are independent; for a fixed input the result is bitwise identical
/// regardless of evaluation order because each score accumulates channels
/// left to right.
pub fn score_matrix<T: Scalar>(
    frames: &FrameGrid<T>,
    events: &EventSet<T>,
    schedule: &FrequencySchedule<T>,
    config: &EncoderConfig<T>,
    temperature: Option<T>,
) -> Result<ScoreMatrix<T>> {
    if let Some(temp) = temperature {
        if !temp.is_finite() || temp <= T::zero() {
            return Err(Error::BadParameter {
                name: "temperature",
                value: temp.lossy(),
            });
        }
    }
    let mut values = Vec::with_capacity(frames.len());
    for (t, q) in frames.times().iter().zip(frames.queries()) {
        let mut row = Vec::with_capacity(events.len());
        for (j, event) in events.events().iter().enumerate() {
            let s = score_point_to_interval(
                q,
                &event.key,
                *t,
                &event.interval,
                event.encoder,
                schedule,
                config,
            )
            .map_err(|e| Error::DegenerateEvent {
                index: j,
                source: Box::new(e),
            })?;
            row.push(s);
        }
        values.push(row);
    }
    let row_softmax = temperature.map(|temp| {
        values
            .iter()
            .map(|row| softmax_row(row, temp))
            .collect::<Vec<_>>()
    });
    Ok(ScoreMatrix {
        frame_times: frames.times().to_vec(),
        values,
        row_softmax,
    })
}

fn softmax_row<T: Scalar>(row: &[T], temperature: T) -> Vec<T> {
    if row.is_empty() {
        return Vec::new();
    }
    let max = row.iter().copied().fold(T::neg_infinity(), T::max);
    let exps: Vec<T> = row.iter().map(|&v| ((v - max) / temperature).exp()).collect();
    let total: T = exps.iter().copied().sum();
    exps.into_iter().map(|e| e / total).collect()
}

/// Expected self-similarity of a uniform unit-sphere query placed `offset`
/// seconds from the interval center, one point per requested offset.
///
/// The value is `C^-1 * mean_l cos(theta_l * gamma * offset) *
/// sinc(alpha * theta_l * gamma * r)`; it is exactly 1 at offset 0.
pub fn decay_curve<T: Scalar>(
    interval: &TimeInterval<T>,
    schedule: &FrequencySchedule<T>,
    config: &EncoderConfig<T>,
    offsets: &[T],
) -> Result<Vec<(T, T)>> {
    let (_, r_scaled) = config.scale_interval(interval);
    let c_norm = normalization_constant(r_scaled, schedule, config.alpha);
    if c_norm.abs() <= config.norm_epsilon {
        return Err(Error::DegenerateNormalization {
            c_value: c_norm.lossy(),
            scaled_radius: r_scaled.lossy(),
            epsilon: config.norm_epsilon.lossy(),
        });
    }
    let damping: Vec<T> = schedule
        .freqs()
        .iter()
        .map(|&theta| sinc(config.alpha * theta * r_scaled))
        .collect();
    let pairs = T::of_usize(schedule.pairs());
    Ok(offsets
        .iter()
        .map(|&dt| {
            let shift = config.gamma * dt;
            let mean = schedule
                .freqs()
                .iter()
                .zip(&damping)
                .map(|(&theta, &s)| (theta * shift).cos() * s)
                .sum::<T>()
                / pairs;
            (dt, mean / c_norm)
        })
        .collect())
}
