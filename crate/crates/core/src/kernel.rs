//! Kernel-expectation oracle for interval encodings.
//!
//! Instead of the closed form, this module computes the expectation of the
//! point-wise rotary encoding under a probability kernel on a time
//! interval, by quadrature or exact atom summation, together with the
//! matching duration normalization. The closed-form encoders are validated
//! against this path; keep the two independent.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::encoding::{
    rope_rotate, rote_encode, EncodedVector, EncoderConfig, FrequencySchedule, Provenance,
    TimeInterval,
};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

// ── Kernels ─────────────────────────────────────────────────────────────────

/// The probability kernel an interval encoding integrates against.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelSpec<T> {
    /// Uniform density on the interval; zero-length support collapses to a
    /// point mass.
    Uniform(TimeInterval<T>),
    /// Equal point masses on the two boundary timestamps.
    DiracPair { start: T, end: T },
    /// Explicit atoms `(time, weight)`; weights must be nonnegative and sum
    /// to 1 within 1e-12.
    Sampled(Vec<(T, T)>),
}

impl<T: Scalar> KernelSpec<T> {
    pub fn validate(&self) -> Result<()> {
        match self {
            KernelSpec::Uniform(_) => Ok(()),
            KernelSpec::DiracPair { start, end } => {
                for t in [*start, *end] {
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
                Ok(())
            }
            KernelSpec::Sampled(atoms) => {
                if atoms.is_empty() {
                    return Err(Error::EmptyKernel);
                }
                let mut sum = T::zero();
                for &(t, w) in atoms {
                    if !t.is_finite() {
                        return Err(Error::NonFiniteTime(t.lossy()));
                    }
                    if !w.is_finite() || w < T::zero() {
                        return Err(Error::BadKernelWeights(w.lossy()));
                    }
                    sum += w;
                }
                if (sum - T::one()).abs() > T::of(1e-12) {
                    return Err(Error::BadKernelWeights(sum.lossy()));
                }
                Ok(())
            }
        }
    }

    /// Convex hull of the support.
    pub fn support(&self) -> (T, T) {
        match self {
            KernelSpec::Uniform(i) => (i.start(), i.end()),
            KernelSpec::DiracPair { start, end } => (*start, *end),
            KernelSpec::Sampled(atoms) => {
                let mut lo = T::infinity();
                let mut hi = T::neg_infinity();
                for &(t, _) in atoms {
                    lo = lo.min(t);
                    hi = hi.max(t);
                }
                (lo, hi)
            }
        }
    }

    /// Midpoint of the support hull, the reference point the normalization
    /// measures phase against.
    pub fn midpoint(&self) -> T {
        let (lo, hi) = self.support();
        (lo + hi) / T::of(2.0)
    }
}

// ── Quadrature ──────────────────────────────────────────────────────────────

/// How a uniform-kernel expectation is evaluated. Atomic kernels are summed
/// exactly; requesting Gauss-Legendre for one is an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrature {
    GaussLegendre { nodes: usize },
    MonteCarlo { samples: usize, seed: u64 },
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature::GaussLegendre { nodes: 64 }
    }
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre<T: Scalar>(n: usize) -> Result<Vec<(T, T)>> {
    if n == 0 {
        return Err(Error::NoQuadratureNodes);
    }
    let mut rule = vec![(T::zero(), T::zero()); n];
    let nf = T::of_usize(n);
    let tol = T::epsilon() * T::of(4.0);
    for i in 0..n.div_ceil(2) {
        let mut x = (T::of(std::f64::consts::PI) * (T::of_usize(i) + T::of(0.75))
            / (nf + T::of(0.5)))
        .cos();
        let mut dp = T::one();
        for _ in 0..100 {
            // P_n(x) and P'_n(x) via the three-term recurrence
            let mut p0 = T::one();
            let mut p1 = x;
            for k in 2..=n {
                let kf = T::of_usize(k);
                let p2 = ((T::of(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - T::one());
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() <= tol {
                break;
            }
        }
        let w = T::of(2.0) / ((T::one() - x * x) * dp * dp);
        // roots come out in decreasing order of |x|; store symmetrically
        rule[i] = (-x, w);
        rule[n - 1 - i] = (x, w);
    }
    if n % 2 == 1 {
        rule[n / 2].0 = T::zero();
    }
    Ok(rule)
}

/// Per-trial generator derived deterministically from a master seed, so
/// trials stay reproducible however they are scheduled.
pub(crate) fn trial_rng(master: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(master.wrapping_add((index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

/// Standard-normal vector of length `dim`, seeded deterministically.
pub fn sample_key<T: Scalar>(rng: &mut ChaCha8Rng, dim: usize) -> Vec<T> {
    (0..dim)
        .map(|_| T::of(StandardNormal.sample(rng)))
        .collect()
}

// ── Expectation and normalization ───────────────────────────────────────────

/// Unnormalized expectation of `rope_rotate(k, tau)` for `tau` drawn from
/// the kernel. Timestamps are γ-scaled inside the point encoder, so the
/// result is directly comparable with the closed-form encoders.
pub fn tie_expectation<T: Scalar>(
    k: &[T],
    kernel: &KernelSpec<T>,
    schedule: &FrequencySchedule<T>,
    config: &EncoderConfig<T>,
    quad: &Quadrature,
) -> Result<EncodedVector<T>> {
    kernel.validate()?;
    let values = expect_vector(kernel, quad, |t| Ok(rope_rotate(k, t, schedule, config)?.values))?;
    Ok(EncodedVector {
        values,
        provenance: Provenance::Oracle,
    })
}

/// Duration normalization for an arbitrary kernel: the mean over the ladder
/// of the expected cosine of the phase relative to the support midpoint,
/// `C(mu) = (2/d) sum_l E[cos(theta_l * gamma * (tau - c))]`.
///
/// For a uniform kernel this equals [`normalization_constant`] at the
/// scaled radius.
pub fn general_normalization<T: Scalar>(
    kernel: &KernelSpec<T>,
    schedule: &FrequencySchedule<T>,
    config: &EncoderConfig<T>,
    quad: &Quadrature,
) -> Result<T> {
    kernel.validate()?;
    let c0 = kernel.midpoint();
    let pairs = T::of_usize(schedule.pairs());
    let values = expect_vector(kernel, quad, |t| {
        let mean = schedule
            .freqs()
            .iter()
            .map(|&theta| (theta * config.gamma * (t - c0)).cos())
            .sum::<T>()
            / pairs;
        Ok(vec![mean])
    })?;
    Ok(values[0])
}

/// Expectation of a vector-valued function under the kernel.
fn expect_vector<T: Scalar>(
    kernel: &KernelSpec<T>,
    quad: &Quadrature,
    mut f: impl FnMut(T) -> Result<Vec<T>>,
) -> Result<Vec<T>> {
    let atoms: Vec<(T, T)> = match kernel {
        KernelSpec::Uniform(interval) => {
            if interval.radius() == T::zero() {
                vec![(interval.center(), T::one())]
            } else {
                match *quad {
                    Quadrature::GaussLegendre { nodes } => {
                        let (c, r) = (interval.center(), interval.radius());
                        gauss_legendre::<T>(nodes)?
                            .into_iter()
                            .map(|(x, w)| (c + r * x, w / T::of(2.0)))
                            .collect()
                    }
                    Quadrature::MonteCarlo { samples, seed } => {
                        if samples == 0 {
                            return Err(Error::NoQuadratureNodes);
                        }
                        let mut rng = ChaCha8Rng::seed_from_u64(seed);
                        let w = T::one() / T::of_usize(samples);
                        (0..samples)
                            .map(|_| {
                                let u = T::of(rng.random::<f64>());
                                (interval.start() + interval.duration() * u, w)
                            })
                            .collect()
                    }
                }
            }
        }
        KernelSpec::DiracPair { start, end } => {
            if matches!(quad, Quadrature::GaussLegendre { .. }) {
                return Err(Error::QuadratureKindMismatch);
            }
            vec![(*start, T::of(0.5)), (*end, T::of(0.5))]
        }
        KernelSpec::Sampled(atoms) => {
            if matches!(quad, Quadrature::GaussLegendre { .. }) {
                return Err(Error::QuadratureKindMismatch);
            }
            atoms.clone()
        }
    };

    let mut acc: Option<Vec<T>> = None;
    for (t, w) in atoms {
        let v = f(t)?;
        match &mut acc {
            None => acc = Some(v.into_iter().map(|x| x * w).collect()),
            Some(a) => {
                for (ai, vi) in a.iter_mut().zip(v) {
                    *ai += vi * w;
                }
            }
        }
    }
    acc.ok_or(Error::EmptyKernel)
}

// ── Closed-form verification sweep ──────────────────────────────────────────

/// Settings for [`verify_closed_form`].
#[derive(Debug, Clone)]
pub struct VerifySettings<T> {
    pub trials: usize,
    pub dim: usize,
    pub base: T,
    pub config: EncoderConfig<T>,
    /// Interval start sampled uniformly from this range (seconds).
    pub start_range: (T, T),
    /// Interval duration sampled uniformly from this range (seconds).
    pub duration_range: (T, T),
    pub quadrature_nodes: usize,
    pub seed: u64,
}

impl<T: Scalar> Default for VerifySettings<T> {
    fn default() -> Self {
        Self {
            trials: 1000,
            dim: 128,
            base: T::of(10000.0),
            config: EncoderConfig::default(),
            start_range: (T::zero(), T::of(10.0)),
            duration_range: (T::of(0.25), T::of(10.0)),
            quadrature_nodes: 64,
            seed: 0,
        }
    }
}

/// One comparison case, reported in f64 regardless of the working scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialCase {
    pub index: usize,
    pub start: f64,
    pub end: f64,
    pub scaled_radius: f64,
    pub error: f64,
}

/// Outcome of a closed-form-vs-quadrature sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub trials_requested: usize,
    pub trials_run: usize,
    /// Trials skipped with the reason (degenerate normalization).
    pub skipped: Vec<(usize, String)>,
    /// Worst componentwise error over all run trials.
    pub max_error: f64,
    pub worst: Option<TrialCase>,
    pub cases: Vec<TrialCase>,
}

impl VerificationReport {
    pub fn passes(&self, threshold: f64) -> bool {
        self.trials_run > 0 && self.max_error <= threshold
    }
}

/// Draw random keys and intervals and compare the closed-form interval
/// encoder against the normalized quadrature expectation, componentwise.
///
/// With `alpha != 1` the damping equals a uniform average over the interval
/// stretched about its center by `alpha`, so the oracle integrates over the
/// stretched interval.
pub fn verify_closed_form<T: Scalar>(settings: &VerifySettings<T>) -> Result<VerificationReport> {
    if settings.trials == 0 {
        return Err(Error::BadParameter {
            name: "trials",
            value: 0.0,
        });
    }
    let schedule = FrequencySchedule::new(settings.base, settings.dim)?;
    let quad = Quadrature::GaussLegendre {
        nodes: settings.quadrature_nodes,
    };

    let mut report = VerificationReport {
        trials_requested: settings.trials,
        trials_run: 0,
        skipped: Vec::new(),
        max_error: 0.0,
        worst: None,
        cases: Vec::new(),
    };

    for i in 0..settings.trials {
        let mut rng = trial_rng(settings.seed, i);
        let key: Vec<T> = sample_key(&mut rng, settings.dim);
        let u: T = T::of(rng.random::<f64>());
        let start = settings.start_range.0 + (settings.start_range.1 - settings.start_range.0) * u;
        let v: T = T::of(rng.random::<f64>());
        let duration =
            settings.duration_range.0 + (settings.duration_range.1 - settings.duration_range.0) * v;
        let interval = TimeInterval::new(start, start + duration)?;

        let closed = match rote_encode(&key, &interval, &schedule, &settings.config) {
            Ok(enc) => enc,
            Err(e @ Error::DegenerateNormalization { .. }) => {
                report.skipped.push((i, e.to_string()));
                continue;
            }
            Err(e) => return Err(e),
        };

        let kernel = KernelSpec::Uniform(interval.stretched(settings.config.alpha));
        let raw = tie_expectation(&key, &kernel, &schedule, &settings.config, &quad)?;
        let c_mu = general_normalization(&kernel, &schedule, &settings.config, &quad)?;
        if c_mu.abs() <= settings.config.norm_epsilon {
            report
                .skipped
                .push((i, format!("oracle normalization {} degenerate", c_mu.lossy())));
            continue;
        }

        let err = closed
            .values
            .iter()
            .zip(&raw.values)
            .map(|(&a, &b)| (a - b / c_mu).abs().lossy())
            .fold(0.0_f64, f64::max);

        let case = TrialCase {
            index: i,
            start: start.lossy(),
            end: (start + duration).lossy(),
            scaled_radius: (settings.config.gamma * interval.radius()).lossy(),
            error: err,
        };
        if err > report.max_error {
            report.max_error = err;
            report.worst = Some(case.clone());
        }
        report.cases.push(case);
        report.trials_run += 1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{normalization_constant, sinc};
    use approx::assert_abs_diff_eq;

    fn schedule8() -> FrequencySchedule<f64> {
        FrequencySchedule::new(10000.0, 8).unwrap()
    }

    #[test]
    fn gauss_legendre_small_rules() {
        // 2-point rule: nodes +-1/sqrt(3), weights 1
        let r = gauss_legendre::<f64>(2).unwrap();
        assert_abs_diff_eq!(r[0].0, -1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(r[1].0, 1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(r[0].1, 1.0, epsilon = 1e-15);
        // weights always sum to 2
        for n in [1, 3, 5, 16, 64] {
            let sum: f64 = gauss_legendre::<f64>(n).unwrap().iter().map(|p| p.1).sum();
            assert_abs_diff_eq!(sum, 2.0, epsilon = 1e-13);
        }
        assert_eq!(gauss_legendre::<f64>(0).unwrap_err(), Error::NoQuadratureNodes);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        // degree-9 polynomial is exact under the 5-point rule
        let rule = gauss_legendre::<f64>(5).unwrap();
        let val: f64 = rule.iter().map(|&(x, w)| w * (x.powi(9) + x.powi(4))).sum();
        assert_abs_diff_eq!(val, 2.0 / 5.0, epsilon = 1e-14);
    }

    #[test]
    fn dirac_point_mass_is_rope() {
        let s = schedule8();
        let cfg = EncoderConfig::default();
        let k = [0.4, 1.0, -0.3, 0.7, 2.0, -1.1, 0.2, 0.9];
        let kern = KernelSpec::DiracPair { start: 1.5, end: 1.5 };
        let quad = Quadrature::MonteCarlo { samples: 1, seed: 0 };
        let e = tie_expectation(&k, &kern, &s, &cfg, &quad).unwrap();
        let r = rope_rotate(&k, 1.5, &s, &cfg).unwrap();
        for (a, b) in e.values.iter().zip(&r.values) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-15);
        }
        assert_eq!(e.provenance, Provenance::Oracle);
    }

    #[test]
    fn uniform_zero_length_is_rope() {
        let s = schedule8();
        let cfg = EncoderConfig::default();
        let k = [0.4, 1.0, -0.3, 0.7, 2.0, -1.1, 0.2, 0.9];
        let kern = KernelSpec::Uniform(TimeInterval::new(2.0, 2.0).unwrap());
        let e = tie_expectation(&k, &kern, &s, &cfg, &Quadrature::default()).unwrap();
        let r = rope_rotate(&k, 2.0, &s, &cfg).unwrap();
        assert_eq!(e.values, r.values);
    }

    #[test]
    fn uniform_expectation_magnitude_is_sinc_damped() {
        // on [1, 3] each plane's magnitude shrinks by |sinc(theta * gamma * 1)|
        // relative to the rotation at the center
        let s = schedule8();
        let cfg = EncoderConfig::default();
        let k = [1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0];
        let kern = KernelSpec::Uniform(TimeInterval::new(1.0, 3.0).unwrap());
        let e = tie_expectation(&k, &kern, &s, &cfg, &Quadrature::default()).unwrap();
        let center = rope_rotate(&k, 2.0, &s, &cfg).unwrap();
        for (l, &theta) in s.freqs().iter().enumerate() {
            let (ix, iy) = cfg.layout.plane(8, l);
            let mag = e.values[ix].hypot(e.values[iy]);
            let ref_mag = center.values[ix].hypot(center.values[iy]);
            let expect = (sinc(theta * cfg.gamma) * ref_mag).abs();
            assert_abs_diff_eq!(mag, expect, epsilon = 1e-10);
        }
    }

    #[test]
    fn gauss_legendre_rejected_for_atomic_kernels() {
        let s = schedule8();
        let cfg = EncoderConfig::default();
        let k = [0.0; 8];
        let kern = KernelSpec::DiracPair { start: 0.0, end: 1.0 };
        assert_eq!(
            tie_expectation(&k, &kern, &s, &cfg, &Quadrature::default()).unwrap_err(),
            Error::QuadratureKindMismatch
        );
        let kern = KernelSpec::Sampled(vec![(0.0, 0.5), (1.0, 0.5)]);
        assert_eq!(
            general_normalization(&kern, &s, &cfg, &Quadrature::default()).unwrap_err(),
            Error::QuadratureKindMismatch
        );
    }

    #[test]
    fn sampled_kernel_weight_validation() {
        let bad = KernelSpec::Sampled(vec![(0.0, 0.6), (1.0, 0.6)]);
        assert!(matches!(bad.validate(), Err(Error::BadKernelWeights(_))));
        let neg = KernelSpec::Sampled(vec![(0.0, -0.1), (1.0, 1.1)]);
        assert!(matches!(neg.validate(), Err(Error::BadKernelWeights(_))));
        let empty = KernelSpec::<f64>::Sampled(vec![]);
        assert_eq!(empty.validate().unwrap_err(), Error::EmptyKernel);
        let ok = KernelSpec::Sampled(vec![(0.0, 0.25), (1.0, 0.75)]);
        ok.validate().unwrap();
        assert_eq!(ok.support(), (0.0, 1.0));
        assert_eq!(ok.midpoint(), 0.5);
    }

    #[test]
    fn normalization_dirac_at_midpoint_is_one() {
        let s = schedule8();
        let cfg = EncoderConfig::default();
        let kern = KernelSpec::DiracPair { start: 3.0, end: 3.0 };
        let quad = Quadrature::MonteCarlo { samples: 1, seed: 0 };
        assert_abs_diff_eq!(
            general_normalization(&kern, &s, &cfg, &quad).unwrap(),
            1.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn normalization_uniform_matches_closed_form() {
        let s = FrequencySchedule::new(10000.0, 128).unwrap();
        let cfg = EncoderConfig::default();
        for (c, r) in [(2.0, 0.5), (5.0, 2.0), (7.5, 5.0)] {
            let kern = KernelSpec::Uniform(TimeInterval::new(c - r, c + r).unwrap());
            let via_quad = general_normalization(&kern, &s, &cfg, &Quadrature::default()).unwrap();
            let closed = normalization_constant(cfg.gamma * r, &s, cfg.alpha);
            assert_abs_diff_eq!(via_quad, closed, epsilon = 1e-10);
        }
    }

    #[test]
    fn normalization_dirac_pair_is_cosine_mean() {
        let s = schedule8();
        let cfg = EncoderConfig::default();
        let (c, r) = (4.0, 1.5);
        let kern = KernelSpec::DiracPair { start: c - r, end: c + r };
        let quad = Quadrature::MonteCarlo { samples: 1, seed: 0 };
        let got = general_normalization(&kern, &s, &cfg, &quad).unwrap();
        let expect: f64 = s
            .freqs()
            .iter()
            .map(|&theta| (theta * cfg.gamma * r).cos())
            .sum::<f64>()
            / 4.0;
        assert_abs_diff_eq!(got, expect, epsilon = 1e-14);
    }

    #[test]
    fn expectation_is_linear_in_the_key() {
        let s = schedule8();
        let cfg = EncoderConfig::default();
        let kern = KernelSpec::Uniform(TimeInterval::new(1.0, 4.0).unwrap());
        let quad = Quadrature::default();
        let k1 = [0.4, 1.0, -0.3, 0.7, 2.0, -1.1, 0.2, 0.9];
        let k2 = [-0.8, 0.1, 0.6, -0.2, 0.3, 1.4, -0.5, 0.0];
        let (a, b) = (2.5, -1.25);
        let combined: Vec<f64> = k1.iter().zip(&k2).map(|(x, y)| a * x + b * y).collect();
        let e_comb = tie_expectation(&combined, &kern, &s, &cfg, &quad).unwrap();
        let e1 = tie_expectation(&k1, &kern, &s, &cfg, &quad).unwrap();
        let e2 = tie_expectation(&k2, &kern, &s, &cfg, &quad).unwrap();
        for i in 0..8 {
            assert_abs_diff_eq!(
                e_comb.values[i],
                a * e1.values[i] + b * e2.values[i],
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn verify_zero_radius_trials_are_exact() {
        let settings = VerifySettings::<f64> {
            trials: 1,
            dim: 8,
            duration_range: (0.0, 0.0),
            seed: 11,
            ..Default::default()
        };
        let report = verify_closed_form(&settings).unwrap();
        assert_eq!(report.trials_run, 1);
        assert!(report.max_error <= 1e-12, "max error {}", report.max_error);
    }

    #[test]
    fn verify_single_frequency_trials_are_exact() {
        let settings = VerifySettings::<f64> {
            trials: 25,
            dim: 2,
            seed: 5,
            ..Default::default()
        };
        let report = verify_closed_form(&settings).unwrap();
        assert_eq!(report.trials_run + report.skipped.len(), 25);
        assert!(report.max_error <= 1e-12, "max error {}", report.max_error);
    }

    #[test]
    fn verify_stretched_kernel_covers_alpha() {
        let settings = VerifySettings::<f64> {
            trials: 50,
            dim: 16,
            config: EncoderConfig::new(4.0, 2.0, 1e-6, Default::default()).unwrap(),
            seed: 3,
            ..Default::default()
        };
        let report = verify_closed_form(&settings).unwrap();
        assert!(report.max_error <= 1e-9, "max error {}", report.max_error);
    }

    #[test]
    fn verify_rejects_zero_trials() {
        let settings = VerifySettings::<f64> {
            trials: 0,
            ..Default::default()
        };
        assert!(matches!(
            verify_closed_form(&settings),
            Err(Error::BadParameter { name: "trials", .. })
        ));
    }

    #[test]
    fn monte_carlo_matches_gauss_legendre_within_three_standard_errors() {
        let s = schedule8();
        let cfg = EncoderConfig::default();
        let k = [0.4, 1.0, -0.3, 0.7, 2.0, -1.1, 0.2, 0.9];
        let interval = TimeInterval::new(1.0, 3.0).unwrap();
        let kern = KernelSpec::Uniform(interval);
        let exact = tie_expectation(&k, &kern, &s, &cfg, &Quadrature::default()).unwrap();

        let n = 1_000_000_usize;
        let mc = tie_expectation(
            &k,
            &kern,
            &s,
            &cfg,
            &Quadrature::MonteCarlo { samples: n, seed: 7 },
        )
        .unwrap();

        // componentwise standard error estimated from an independent pilot run
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let pilot = 20_000;
        let mut sum = [0.0_f64; 8];
        let mut sumsq = [0.0_f64; 8];
        for _ in 0..pilot {
            let t = interval.start() + interval.duration() * rng.random::<f64>();
            let v = rope_rotate(&k, t, &s, &cfg).unwrap();
            for i in 0..8 {
                sum[i] += v.values[i];
                sumsq[i] += v.values[i] * v.values[i];
            }
        }
        for i in 0..8 {
            let mean = sum[i] / pilot as f64;
            let var = (sumsq[i] / pilot as f64 - mean * mean).max(0.0);
            let se = (var / n as f64).sqrt();
            let gap = (mc.values[i] - exact.values[i]).abs();
            assert!(
                gap <= 3.0 * se + 1e-12,
                "component {i}: gap {gap} exceeds 3 se {se}"
            );
        }
    }
}
