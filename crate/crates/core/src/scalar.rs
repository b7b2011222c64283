//! Scalar abstraction for the numeric core.
//!
//! Everything in this crate is generic over [`Scalar`] so the same code
//! drives `f32` and `f64`. The documented tolerances (1e-9 and tighter)
//! assume `f64`; `f32` is usable for coarse experiments only.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar the encoders are generic over.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lift an `f64` constant into the scalar type.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("constant not representable in scalar type")
    }

    /// Lower to `f64` for reports and error payloads.
    fn lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Lift a count.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("count not representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
