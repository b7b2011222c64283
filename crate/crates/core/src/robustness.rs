//! Empirical checks of the interval encoder's noise sensitivity.
//!
//! The closed-form score shift under endpoint noise bounded by `delta` is
//! at most `|q||k| * delta / (r - delta) * (3/C_min + 2/C_min^2)`, where
//! `C_min` is the smallest |normalization| over the perturbed radius band.
//! This module evaluates that bound trial by trial ([`run_noise_sweep`]),
//! approximates `C_min` soundly ([`c_min_over_range`]), and checks the
//! derivative and low-pass inequalities the bound rests on.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::encoding::{
    normalization_constant, rope_rotate, rote_encode, sinc, sinc_deriv, EncoderConfig,
    FrequencySchedule, TimeInterval,
};
use crate::error::{Error, Result};
use crate::kernel::{sample_key, trial_rng};
use crate::scalar::Scalar;

// ── Closed-form bound ───────────────────────────────────────────────────────

/// The score-shift bound for endpoint noise bounded almost surely by
/// `delta` on an interval of radius `r`.
///
/// `delta` and `r` must be in the same units; the ratio `delta/(r-delta)`
/// is invariant under the γ scaling, so seconds are fine as long as
/// `c_min` comes from the γ-scaled band.
pub fn sensitivity_bound<T: Scalar>(q_norm: T, k_norm: T, delta: T, r: T, c_min: T) -> Result<T> {
    if !c_min.is_finite() || c_min <= T::zero() {
        return Err(Error::NonPositiveCMin(c_min.lossy()));
    }
    if delta < T::zero() || delta >= r {
        return Err(Error::DeltaOutOfRange {
            delta: delta.lossy(),
            r: r.lossy(),
        });
    }
    Ok(q_norm * k_norm * delta / (r - delta)
        * (T::of(3.0) / c_min + T::of(2.0) / (c_min * c_min)))
}

// ── C_min over the perturbed radius band ────────────────────────────────────

/// The returned infimum estimate exceeds the true infimum by at most this
/// much; subtract it before using the result on the sound side of an
/// inequality. The refinement drives the argument to 1e-9, and |C'| is at
/// most 2 over the scaled radius, so the value error stays far below this.
pub const C_MIN_TOLERANCE: f64 = 1e-6;

/// Infimum of |C| over scaled radii `gamma*[r-delta, r+delta]`.
///
/// The grid step resolves every oscillation of the sinc mean (extrema are
/// at least ~pi/(alpha*theta_max) apart in the scaled radius), local minima
/// are refined by golden section, and a sign change between neighbours
/// means a zero crossing, in which case the infimum is 0.
pub fn c_min_over_range<T: Scalar>(
    r: T,
    delta: T,
    schedule: &FrequencySchedule<T>,
    config: &EncoderConfig<T>,
) -> Result<T> {
    if delta < T::zero() || delta >= r {
        return Err(Error::DeltaOutOfRange {
            delta: delta.lossy(),
            r: r.lossy(),
        });
    }
    let c_of = |rho: T| normalization_constant(rho, schedule, config.alpha);
    let lo = config.gamma * (r - delta);
    let hi = config.gamma * (r + delta);
    if delta == T::zero() {
        return Ok(c_of(lo).abs());
    }

    // ~20x oversampling of the fastest oscillation, at least 65 points
    let step_target = T::of(0.05) / (config.alpha * schedule.theta_max());
    let n = (((hi - lo) / step_target).ceil().lossy() as usize).clamp(64, 2_000_000);
    let step = (hi - lo) / T::of_usize(n);
    let grid: Vec<T> = (0..=n).map(|i| lo + step * T::of_usize(i)).collect();
    let vals: Vec<T> = grid.iter().map(|&rho| c_of(rho)).collect();

    for w in vals.windows(2) {
        if w[0] == T::zero() || w[1] == T::zero() || (w[0] > T::zero()) != (w[1] > T::zero()) {
            return Ok(T::zero());
        }
    }

    let mut best = vals[0].abs().min(vals[n].abs());
    for i in 1..n {
        if vals[i].abs() <= vals[i - 1].abs() && vals[i].abs() <= vals[i + 1].abs() {
            let refined = golden_min(grid[i - 1], grid[i + 1], T::of(1e-9), |x| c_of(x).abs());
            best = best.min(refined);
        }
    }
    Ok(best)
}

/// Golden-section minimum of `f` on `[a, b]` to argument tolerance `tol`.
fn golden_min<T: Scalar>(mut a: T, mut b: T, tol: T, f: impl Fn(T) -> T) -> T {
    let phi = T::of((5f64.sqrt() - 1.0) / 2.0);
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a) > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

// ── Noise sweeps ────────────────────────────────────────────────────────────

/// Endpoint-noise description for a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationSpec<T> {
    /// Almost-sure bound on each endpoint shift in bounded mode, seconds.
    pub delta: T,
    /// Gaussian standard deviation in gaussian mode, seconds.
    pub sigma: T,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseMode {
    #[default]
    Bounded,
    Gaussian,
}

/// Interval / query sampling regime for a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings<T> {
    pub start_range: (T, T),
    pub duration_range: (T, T),
    pub query_time_range: (T, T),
    /// Bounded mode resamples intervals until `r >= min_radius_ratio * delta`.
    pub min_radius_ratio: T,
    /// Bounded-mode trials whose band infimum falls below this floor are
    /// skipped rather than checked against the bound.
    pub c_min_floor: T,
}

impl<T: Scalar> Default for SweepSettings<T> {
    fn default() -> Self {
        Self {
            start_range: (T::zero(), T::of(10.0)),
            duration_range: (T::of(0.25), T::of(10.0)),
            query_time_range: (T::zero(), T::of(10.0)),
            min_radius_ratio: T::of(2.0),
            c_min_floor: T::of(0.1),
        }
    }
}

/// One sweep trial.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSample {
    pub index: usize,
    pub center: f64,
    pub radius: f64,
    pub eps_start: f64,
    pub eps_end: f64,
    /// Empirical |score shift|.
    pub score_shift: f64,
    /// Bound and derived quantities, bounded mode only.
    pub bound: Option<f64>,
    pub c_min: Option<f64>,
    pub ratio: Option<f64>,
}

/// Aggregated sweep outcome. A violation is a trial whose empirical shift
/// exceeds the bound by more than 1e-9.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub mode: NoiseMode,
    pub rows: Vec<SweepSample>,
    pub violations: usize,
    pub worst_ratio: f64,
    pub skipped: Vec<(usize, String)>,
}

pub const VIOLATION_SLACK: f64 = 1e-9;

/// Perturb sampled intervals with endpoint noise and compare the score
/// shift against [`sensitivity_bound`] (bounded mode) or record the shift
/// distribution (gaussian mode).
pub fn run_noise_sweep<T: Scalar>(
    noise: &PerturbationSpec<T>,
    mode: NoiseMode,
    schedule: &FrequencySchedule<T>,
    config: &EncoderConfig<T>,
    settings: &SweepSettings<T>,
) -> Result<BoundReport> {
    if noise.delta < T::zero() || !noise.delta.is_finite() {
        return Err(Error::BadParameter {
            name: "delta",
            value: noise.delta.lossy(),
        });
    }
    let max_radius = settings.duration_range.1 / T::of(2.0);
    if mode == NoiseMode::Bounded
        && noise.delta > T::zero()
        && noise.delta * settings.min_radius_ratio > max_radius
    {
        // no sampled interval can satisfy the precondition
        return Err(Error::DeltaOutOfRange {
            delta: noise.delta.lossy(),
            r: max_radius.lossy(),
        });
    }

    let mut report = BoundReport {
        mode,
        rows: Vec::with_capacity(noise.trials),
        violations: 0,
        worst_ratio: 0.0,
        skipped: Vec::new(),
    };

    let uniform = |rng: &mut rand_chacha::ChaCha8Rng, range: (T, T)| -> T {
        range.0 + (range.1 - range.0) * T::of(rng.random::<f64>())
    };

    for i in 0..noise.trials {
        let mut rng = trial_rng(noise.seed, i);

        let mut attempts = 0;
        let interval = loop {
            let start = uniform(&mut rng, settings.start_range);
            let duration = uniform(&mut rng, settings.duration_range);
            let candidate = TimeInterval::new(start, start + duration)?;
            if mode == NoiseMode::Gaussian
                || candidate.radius() >= settings.min_radius_ratio * noise.delta
            {
                break candidate;
            }
            attempts += 1;
            if attempts > 10_000 {
                return Err(Error::DeltaOutOfRange {
                    delta: noise.delta.lossy(),
                    r: candidate.radius().lossy(),
                });
            }
        };

        let q = sample_key::<T>(&mut rng, schedule.dim());
        let k = sample_key::<T>(&mut rng, schedule.dim());
        let m = uniform(&mut rng, settings.query_time_range);

        let (eps_s, eps_e) = match mode {
            NoiseMode::Bounded => (
                uniform(&mut rng, (-noise.delta, noise.delta)),
                uniform(&mut rng, (-noise.delta, noise.delta)),
            ),
            NoiseMode::Gaussian => {
                let g1: f64 = StandardNormal.sample(&mut rng);
                let g2: f64 = StandardNormal.sample(&mut rng);
                (noise.sigma * T::of(g1), noise.sigma * T::of(g2))
            }
        };

        let perturbed = match TimeInterval::new(
            interval.start() + eps_s,
            interval.end() + eps_e,
        ) {
            Ok(p) => p,
            Err(_) => {
                report
                    .skipped
                    .push((i, "perturbed interval reversed".to_string()));
                continue;
            }
        };

        let query = rope_rotate(&q, m, schedule, config)?;
        let clean = match rote_encode(&k, &interval, schedule, config) {
            Ok(enc) => enc,
            Err(e @ Error::DegenerateNormalization { .. }) => {
                report.skipped.push((i, e.to_string()));
                continue;
            }
            Err(e) => return Err(e),
        };
        let noisy = match rote_encode(&k, &perturbed, schedule, config) {
            Ok(enc) => enc,
            Err(e @ Error::DegenerateNormalization { .. }) => {
                report.skipped.push((i, e.to_string()));
                continue;
            }
            Err(e) => return Err(e),
        };
        let shift = (query.dot(noisy.as_slice()) - query.dot(clean.as_slice()))
            .abs()
            .lossy();

        let mut row = SweepSample {
            index: i,
            center: interval.center().lossy(),
            radius: interval.radius().lossy(),
            eps_start: eps_s.lossy(),
            eps_end: eps_e.lossy(),
            score_shift: shift,
            bound: None,
            c_min: None,
            ratio: None,
        };

        if mode == NoiseMode::Bounded {
            if noise.delta == T::zero() {
                row.bound = Some(0.0);
                row.ratio = Some(0.0);
                if shift > VIOLATION_SLACK {
                    report.violations += 1;
                }
                report.rows.push(row);
                continue;
            }
            let c_band = c_min_over_range(interval.radius(), noise.delta, schedule, config)?;
            // sound side: the estimate may overshoot the infimum by the
            // refinement tolerance
            let c_min = c_band - T::of(C_MIN_TOLERANCE);
            if c_min < settings.c_min_floor {
                report
                    .skipped
                    .push((i, format!("c_min {} below floor", c_min.lossy())));
                continue;
            }
            let bound = sensitivity_bound(
                query.norm(),
                k.iter().map(|&v| v * v).sum::<T>().sqrt(),
                noise.delta,
                interval.radius(),
                c_min,
            )?
            .lossy();
            let ratio = if bound > 0.0 { shift / bound } else { 0.0 };
            if shift > bound + VIOLATION_SLACK {
                report.violations += 1;
            }
            report.worst_ratio = report.worst_ratio.max(ratio);
            row.bound = Some(bound);
            row.c_min = Some(c_min.lossy());
            row.ratio = Some(ratio);
        }
        report.rows.push(row);
    }
    Ok(report)
}

// ── Derivative bounds ───────────────────────────────────────────────────────

/// Outcome of the finite-difference derivative checks.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeReport {
    pub samples: usize,
    /// Worst `fd_norm - bound` margins (expected <= tolerance).
    pub worst_center_margin: f64,
    pub worst_radius_margin: f64,
    pub worst_norm_margin: f64,
    /// Worst entrywise gap between analytic and finite-difference blocks.
    pub max_analytic_gap: f64,
    pub violations: usize,
    pub tolerance: f64,
}

/// Block of the interval rotation at scaled center `c` and scaled radius
/// `r`: `[[a, -b], [b, a]]` with `a = sinc(alpha*theta*r) cos(theta*c)`.
fn block<T: Scalar>(theta: T, c: T, r: T, alpha: T) -> (T, T) {
    let s = sinc(alpha * theta * r);
    let (sin, cos) = (theta * c).sin_cos();
    (s * cos, s * sin)
}

/// Check the operator-norm bounds `|d/dc R| <= 1/r`, `|d/dr R| <= 2/r`, and
/// `|C'| <= 2/r` by central finite differences at `samples` random scaled
/// points, and the analytic block derivatives against the same stencil.
///
/// A rotation-scaled 2x2 block has operator norm `hypot(a, b)`, so the
/// block-diagonal norm is the max over planes.
pub fn derivative_bound_check<T: Scalar>(
    samples: usize,
    h: T,
    schedule: &FrequencySchedule<T>,
    config: &EncoderConfig<T>,
    seed: u64,
    tolerance: T,
) -> DerivativeReport {
    let mut report = DerivativeReport {
        samples,
        worst_center_margin: f64::NEG_INFINITY,
        worst_radius_margin: f64::NEG_INFINITY,
        worst_norm_margin: f64::NEG_INFINITY,
        max_analytic_gap: 0.0,
        violations: 0,
        tolerance: tolerance.lossy(),
    };
    let alpha = config.alpha;
    let two_h = T::of(2.0) * h;

    for i in 0..samples {
        let mut rng = trial_rng(seed, i);
        // scaled coordinates, matching the encoder's operating range
        let c = T::of(rng.random::<f64>() * 40.0);
        let r = T::of(0.5 + rng.random::<f64>() * 19.5);

        let mut fd_dc = T::zero();
        let mut fd_dr = T::zero();
        for &theta in schedule.freqs() {
            let (ap, bp) = block(theta, c + h, r, alpha);
            let (am, bm) = block(theta, c - h, r, alpha);
            let (da, db) = ((ap - am) / two_h, (bp - bm) / two_h);
            fd_dc = fd_dc.max(da.hypot(db));

            // analytic d/dc: theta * sinc * d(rotation)
            let s = sinc(alpha * theta * r);
            let (sin, cos) = (theta * c).sin_cos();
            let (ga, gb) = (-theta * s * sin, theta * s * cos);
            report.max_analytic_gap = report
                .max_analytic_gap
                .max((da - ga).abs().lossy())
                .max((db - gb).abs().lossy());

            let (ap, bp) = block(theta, c, r + h, alpha);
            let (am, bm) = block(theta, c, r - h, alpha);
            let (da, db) = ((ap - am) / two_h, (bp - bm) / two_h);
            fd_dr = fd_dr.max(da.hypot(db));

            // analytic d/dr: alpha * theta * sinc' * rotation
            let sd = alpha * theta * sinc_deriv(alpha * theta * r);
            let (ga, gb) = (sd * cos, sd * sin);
            report.max_analytic_gap = report
                .max_analytic_gap
                .max((da - ga).abs().lossy())
                .max((db - gb).abs().lossy());
        }

        let fd_c_prime = (normalization_constant(r + h, schedule, alpha)
            - normalization_constant(r - h, schedule, alpha))
            / two_h;

        let margin_c = (fd_dc - T::one() / r).lossy();
        let margin_r = (fd_dr - T::of(2.0) / r).lossy();
        let margin_n = (fd_c_prime.abs() - T::of(2.0) / r).lossy();
        report.worst_center_margin = report.worst_center_margin.max(margin_c);
        report.worst_radius_margin = report.worst_radius_margin.max(margin_r);
        report.worst_norm_margin = report.worst_norm_margin.max(margin_n);
        let tol = tolerance.lossy();
        if margin_c > tol || margin_r > tol || margin_n > tol {
            report.violations += 1;
        }
    }
    report
}

// ── Low-pass inequality ─────────────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq)]
pub struct LowpassReport {
    pub samples: usize,
    pub violations: usize,
    /// Worst `theta*|sinc(theta*r)| - 1/r` over the sampled pairs.
    pub worst_margin: f64,
}

/// Check `theta * |sinc(theta*r)| = |sin(theta*r)|/r <= 1/r` with slack
/// 1e-12 over random `(theta, r)` in `(0, 100]^2`.
pub fn lowpass_check(samples: usize, seed: u64) -> LowpassReport {
    let mut rng = trial_rng(seed, 0);
    let mut report = LowpassReport {
        samples,
        violations: 0,
        worst_margin: f64::NEG_INFINITY,
    };
    for _ in 0..samples {
        let theta = (1.0 - rng.random::<f64>()) * 100.0;
        let r = (1.0 - rng.random::<f64>()) * 100.0;
        let lhs = theta * sinc(theta * r).abs();
        let margin = lhs - 1.0 / r;
        report.worst_margin = report.worst_margin.max(margin);
        if margin > 1e-12 {
            report.violations += 1;
        }
    }
    report
}
