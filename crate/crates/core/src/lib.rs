//! Interval-aware rotary time encoding.
//!
//! Attention over video frames treats a frame token as a temporal point and
//! an event token as a time interval. This crate provides:
//!
//! * the closed-form encoders ([`rope_rotate`], [`rote_encode`],
//!   [`dote_encode`]) sharing one [`FrequencySchedule`],
//! * a brute-force kernel-expectation oracle ([`kernel`]) that validates
//!   the closed forms by quadrature,
//! * point-to-interval attention scoring and decay curves ([`scoring`]),
//! * empirical checks of the endpoint-noise sensitivity bound
//!   ([`robustness`]).
//!
//! Everything is generic over the [`Scalar`] type; the aliases below pin
//! the common `f64` instantiations. All operations are pure functions of
//! their inputs and safe to call from any number of threads.

pub mod encoding;
pub mod error;
pub mod kernel;
pub mod robustness;
pub mod scalar;
pub mod scoring;

pub use encoding::{
    dot, dote_encode, normalization_constant, rope_rotate, rote_encode, sinc, sinc_deriv,
    EncodedVector, EncoderConfig, FrequencySchedule, PairLayout, Provenance, TimeInterval,
};
pub use error::{Error, Result};
pub use scalar::Scalar;

// Concrete instantiations; f64 is what every documented tolerance assumes.
pub type Schedule64 = FrequencySchedule<f64>;
pub type Interval64 = TimeInterval<f64>;
pub type Config64 = EncoderConfig<f64>;
pub type Encoded64 = EncodedVector<f64>;
pub type Kernel64 = kernel::KernelSpec<f64>;

pub type Schedule32 = FrequencySchedule<f32>;
pub type Interval32 = TimeInterval<f32>;
pub type Config32 = EncoderConfig<f32>;
pub type Encoded32 = EncodedVector<f32>;
pub type Kernel32 = kernel::KernelSpec<f32>;
