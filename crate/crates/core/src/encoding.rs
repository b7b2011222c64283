//! Closed-form temporal encoders.
//!
//! Three encoders share one rotary frequency ladder:
//!
//! * [`rope_rotate`] applies the standard point-wise rotary encoding at a
//!   timestamp. Scores between two rotated vectors depend only on the time
//!   difference.
//! * [`rote_encode`] encodes a time interval in closed form: each rotation
//!   plane is rotated to the interval center, damped by `sinc(theta * r)`,
//!   and the whole vector is divided by [`normalization_constant`] so a
//!   unit query at the interval center has expected self-overlap exactly 1
//!   regardless of the interval length.
//! * [`dote_encode`] is the boundary-only variant: the two channel halves
//!   are rope-rotated at the interval start and end under a halved ladder.
//!
//! All timestamps are multiplied by the configured `gamma` before any
//! trigonometry; `alpha` scales the sinc argument only.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

// ── sinc primitives ─────────────────────────────────────────────────────────

/// sin(x)/x with the removable singularity filled in: sinc(0) = 1.
pub fn sinc<T: Scalar>(x: T) -> T {
    if x == T::zero() {
        T::one()
    } else {
        x.sin() / x
    }
}

/// Derivative of [`sinc`]: (cos x - sinc x)/x, with sinc'(0) = 0.
///
/// The direct quotient cancels catastrophically near zero, so a short
/// series takes over below |x| = 1e-4 (remainder O(x^5)).
pub fn sinc_deriv<T: Scalar>(x: T) -> T {
    if x.abs() < T::of(1e-4) {
        let x2 = x * x;
        -x / T::of(3.0) + x * x2 / T::of(30.0)
    } else {
        (x.cos() - sinc(x)) / x
    }
}

// ── Frequency schedule ──────────────────────────────────────────────────────

/// The rotary frequency ladder `theta_l = base^(-2(l-1)/d)` for `l = 1..d/2`.
///
/// `theta_1` is exactly 1 and the ladder is strictly decreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencySchedule<T> {
    base: T,
    dim: usize,
    freqs: Vec<T>,
}

impl<T: Scalar> FrequencySchedule<T> {
    pub fn new(base: T, dim: usize) -> Result<Self> {
        if dim < 2 || !dim.is_multiple_of(2) {
            return Err(Error::BadDimension(dim));
        }
        if !base.is_finite() || base <= T::one() {
            return Err(Error::BadBase(base.lossy()));
        }
        let d = T::of_usize(dim);
        let freqs = (0..dim / 2)
            .map(|l| base.powf(-T::of(2.0) * T::of_usize(l) / d))
            .collect();
        Ok(Self { base, dim, freqs })
    }

    pub fn base(&self) -> T {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of rotation planes, d/2.
    pub fn pairs(&self) -> usize {
        self.dim / 2
    }

    pub fn freqs(&self) -> &[T] {
        &self.freqs
    }

    /// Largest frequency in the ladder (always `theta_1 = 1`).
    pub fn theta_max(&self) -> T {
        self.freqs[0]
    }

    /// Fresh ladder of half the dimension, as used per channel half by
    /// [`dote_encode`].
    pub fn halved(&self) -> Result<Self> {
        Self::new(self.base, self.dim / 2)
    }
}

// ── Intervals ───────────────────────────────────────────────────────────────

/// An event's temporal support `[start, end]`, in seconds.
///
/// Center and radius are always derived, never stored. Zero-length
/// intervals are allowed everywhere; reversed ones are rejected at
/// construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeInterval<T> {
    start: T,
    end: T,
}

impl<T: Scalar> TimeInterval<T> {
    pub fn new(start: T, end: T) -> Result<Self> {
        for t in [start, end] {
            if !t.is_finite() {
                return Err(Error::NonFiniteTime(t.lossy()));
            }
        }
        if end < start {
            return Err(Error::ReversedInterval {
                start: start.lossy(),
                end: end.lossy(),
            });
        }
        Ok(Self { start, end })
    }

    /// Zero-radius interval sitting on a single timestamp.
    pub fn point(t: T) -> Result<Self> {
        Self::new(t, t)
    }

    pub fn start(&self) -> T {
        self.start
    }

    pub fn end(&self) -> T {
        self.end
    }

    /// Midpoint `(start + end) / 2`.
    pub fn center(&self) -> T {
        (self.start + self.end) / T::of(2.0)
    }

    /// Half-width `(end - start) / 2`.
    pub fn radius(&self) -> T {
        (self.end - self.start) / T::of(2.0)
    }

    pub fn duration(&self) -> T {
        self.end - self.start
    }

    pub fn contains(&self, t: T) -> bool {
        self.start <= t && t <= self.end
    }

    /// The interval stretched about its center by `factor`.
    pub fn stretched(&self, factor: T) -> Self {
        let c = self.center();
        let r = self.radius() * factor;
        Self {
            start: c - r,
            end: c + r,
        }
    }
}

// ── Channel layout ──────────────────────────────────────────────────────────

/// How the d channels are grouped into 2-D rotation planes.
///
/// The two layouts are related by a fixed permutation and produce identical
/// attention scores when the permutation is applied consistently to queries
/// and keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairLayout {
    /// Plane `l` rotates channels `(2l, 2l+1)`.
    #[default]
    AdjacentPairs,
    /// Plane `l` rotates channels `(l, l + d/2)`.
    HalfSplit,
}

impl PairLayout {
    /// Channel indices of rotation plane `l` for dimension `dim`.
    #[inline]
    pub fn plane(self, dim: usize, l: usize) -> (usize, usize) {
        match self {
            PairLayout::AdjacentPairs => (2 * l, 2 * l + 1),
            PairLayout::HalfSplit => (l, l + dim / 2),
        }
    }

    /// Re-index `v` from `self`'s channel layout to `to`'s, preserving each
    /// plane's (x, y) coordinates.
    pub fn permute<U: Copy>(self, to: PairLayout, v: &[U]) -> Vec<U> {
        let dim = v.len();
        let mut out = v.to_vec();
        for l in 0..dim / 2 {
            let (fx, fy) = self.plane(dim, l);
            let (tx, ty) = to.plane(dim, l);
            out[tx] = v[fx];
            out[ty] = v[fy];
        }
        out
    }
}

// ── Encoder configuration ───────────────────────────────────────────────────

/// Knobs shared by all encoders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EncoderConfig<T> {
    /// Timestamp multiplier applied before any trigonometry. Default 4.0.
    pub gamma: T,
    /// Extra multiplier on the sinc argument only. Default 1.0.
    pub alpha: T,
    /// |C| at or below this threshold counts as degenerate. Default 1e-6.
    pub norm_epsilon: T,
    pub layout: PairLayout,
}

impl<T: Scalar> Default for EncoderConfig<T> {
    fn default() -> Self {
        Self {
            gamma: T::of(4.0),
            alpha: T::one(),
            norm_epsilon: T::of(1e-6),
            layout: PairLayout::AdjacentPairs,
        }
    }
}

impl<T: Scalar> EncoderConfig<T> {
    pub fn new(gamma: T, alpha: T, norm_epsilon: T, layout: PairLayout) -> Result<Self> {
        for (name, value) in [
            ("gamma", gamma),
            ("alpha", alpha),
            ("norm_epsilon", norm_epsilon),
        ] {
            if !value.is_finite() || value <= T::zero() {
                return Err(Error::BadParameter {
                    name,
                    value: value.lossy(),
                });
            }
        }
        Ok(Self {
            gamma,
            alpha,
            norm_epsilon,
            layout,
        })
    }

    /// Scaled center and radius, `(gamma*c, gamma*r)`.
    pub fn scale_interval(&self, interval: &TimeInterval<T>) -> (T, T) {
        (
            self.gamma * interval.center(),
            self.gamma * interval.radius(),
        )
    }
}

// ── Encoded vectors ─────────────────────────────────────────────────────────

/// Which encoder produced a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Rope,
    Rote,
    Dote,
    Oracle,
}

/// A d-dimensional encoded query or key.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedVector<T> {
    pub values: Vec<T>,
    pub provenance: Provenance,
}

impl<T: Scalar> EncodedVector<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.values
    }

    pub fn norm(&self) -> T {
        self.values.iter().map(|&v| v * v).sum::<T>().sqrt()
    }

    pub fn dot(&self, other: &[T]) -> T {
        dot(&self.values, other)
    }
}

/// Plain dot product with fixed left-to-right accumulation.
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = T::zero();
    for (&x, &y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

fn check_len<T>(k: &[T], schedule: &FrequencySchedule<impl Scalar>) -> Result<()> {
    if k.len() != schedule.dim() {
        return Err(Error::LengthMismatch {
            len: k.len(),
            dim: schedule.dim(),
        });
    }
    Ok(())
}

/// Rotate every plane of `v` by `theta_l * t_scaled`, optionally scaling
/// plane `l` by `scales[l]`.
fn rotate_in_place<T: Scalar>(
    v: &mut [T],
    t_scaled: T,
    freqs: &[T],
    layout: PairLayout,
    scales: Option<&[T]>,
) {
    let dim = v.len();
    for (l, &theta) in freqs.iter().enumerate() {
        let (ix, iy) = layout.plane(dim, l);
        let (sin, cos) = (theta * t_scaled).sin_cos();
        let s = scales.map_or(T::one(), |sc| sc[l]);
        let (x, y) = (v[ix], v[iy]);
        v[ix] = s * (x * cos - y * sin);
        v[iy] = s * (x * sin + y * cos);
    }
}

// ── Encoders ────────────────────────────────────────────────────────────────

/// Point-wise rotary encoding of `k` at timestamp `t` (seconds).
///
/// Each plane is rotated by `theta_l * gamma * t`; the output norm equals
/// the input norm since every plane transform is a rotation.
pub fn rope_rotate<T: Scalar>(
    k: &[T],
    t: T,
    schedule: &FrequencySchedule<T>,
    config: &EncoderConfig<T>,
) -> Result<EncodedVector<T>> {
    check_len(k, schedule)?;
    if !t.is_finite() {
        return Err(Error::NonFiniteTime(t.lossy()));
    }
    let mut values = k.to_vec();
    rotate_in_place(
        &mut values,
        config.gamma * t,
        schedule.freqs(),
        config.layout,
        None,
    );
    Ok(EncodedVector {
        values,
        provenance: Provenance::Rope,
    })
}

/// Mean of `sinc(alpha * theta_l * r)` over the ladder; `r` is a
/// γ-scaled radius.
///
/// This is the constant that keeps the expected self-overlap of a unit
/// query at the interval center equal to 1. It is always defined; deciding
/// whether a value too close to zero is usable is the caller's concern.
pub fn normalization_constant<T: Scalar>(
    r_scaled: T,
    schedule: &FrequencySchedule<T>,
    alpha: T,
) -> T {
    let sum: T = schedule
        .freqs()
        .iter()
        .map(|&theta| sinc(alpha * theta * r_scaled))
        .sum();
    sum / T::of_usize(schedule.pairs())
}

/// Closed-form interval encoding of `k` over `interval`.
///
/// Plane `l` is rotated by `theta_l * gamma * c` and scaled by
/// `sinc(alpha * theta_l * gamma * r)`; the whole vector is divided by the
/// normalization constant. Fails when |C| is within `norm_epsilon` of zero.
/// Reduces to [`rope_rotate`] at the center as the radius goes to zero.
pub fn rote_encode<T: Scalar>(
    k: &[T],
    interval: &TimeInterval<T>,
    schedule: &FrequencySchedule<T>,
    config: &EncoderConfig<T>,
) -> Result<EncodedVector<T>> {
    check_len(k, schedule)?;
    let (c_scaled, r_scaled) = config.scale_interval(interval);
    let c_norm = normalization_constant(r_scaled, schedule, config.alpha);
    if c_norm.abs() <= config.norm_epsilon {
        return Err(Error::DegenerateNormalization {
            c_value: c_norm.lossy(),
            scaled_radius: r_scaled.lossy(),
            epsilon: config.norm_epsilon.lossy(),
        });
    }
    let scales: Vec<T> = schedule
        .freqs()
        .iter()
        .map(|&theta| sinc(config.alpha * theta * r_scaled) / c_norm)
        .collect();
    let mut values = k.to_vec();
    rotate_in_place(
        &mut values,
        c_scaled,
        schedule.freqs(),
        config.layout,
        Some(&scales),
    );
    Ok(EncodedVector {
        values,
        provenance: Provenance::Rote,
    })
}

/// Boundary-only interval encoding.
///
/// The first d/2 channels are rope-rotated at the interval start, the
/// second d/2 at the end, each under a fresh ladder of dimension d/2.
/// Requires d divisible by 4 so both halves pair up.
pub fn dote_encode<T: Scalar>(
    k: &[T],
    interval: &TimeInterval<T>,
    schedule: &FrequencySchedule<T>,
    config: &EncoderConfig<T>,
) -> Result<EncodedVector<T>> {
    let dim = schedule.dim();
    if !dim.is_multiple_of(4) {
        return Err(Error::UnsplittableDimension(dim));
    }
    check_len(k, schedule)?;
    let half = schedule.halved()?;
    let mid = dim / 2;
    let start_half = rope_rotate(&k[..mid], interval.start(), &half, config)?;
    let end_half = rope_rotate(&k[mid..], interval.end(), &half, config)?;
    let mut values = start_half.values;
    values.extend(end_half.values);
    Ok(EncodedVector {
        values,
        provenance: Provenance::Dote,
    })
}
