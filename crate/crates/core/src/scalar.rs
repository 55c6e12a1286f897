//! Scalar abstraction shared by every numeric kernel in the crate.

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point type the force formulas can be evaluated in.
///
/// Implemented for anything that is a `num_traits::Float` with constants and
/// `f64` conversion, which covers `f32`, `f64` and double-double types such
/// as `twofloat::TwoFloat`.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {
    /// Converts an `f64` literal. Panics only if the target type cannot
    /// represent finite `f64` values, which no supported type does.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }

    /// Lossy conversion to `f64` for diagnostics and error payloads.
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where T: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {}
