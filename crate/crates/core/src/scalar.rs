//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the quantum and bound routines are generic over.
///
/// The associated tolerances are the validation thresholds used at
/// construction time. They are tied to the precision of the type, so the
/// `f64` values are the ones quoted throughout the documentation.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Roundoff-level tolerance: state norms, Hermiticity, trace, probability clamping.
    const ROUNDOFF: f64;
    /// Accumulated-error tolerance: probability sums, orthonormality, PSD slack.
    const LOOSE: f64;
    /// Distance within which a ratio is snapped to the nearest integer before `ceil`.
    const SNAP: f64;
    /// Probabilities at or below this contribute nothing to an entropy (`0 log 0 = 0`).
    const TINY: f64;
    /// Slack allowed when checking a computed entropy sum against a proven bound.
    const BOUND_SLACK: f64;
    /// Central-difference step for numerical gradients.
    const FD_STEP: f64;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Real for f64 {
    const ROUNDOFF: f64 = 1e-12;
    const LOOSE: f64 = 1e-10;
    const SNAP: f64 = 1e-9;
    const TINY: f64 = 1e-300;
    const BOUND_SLACK: f64 = 1e-9;
    const FD_STEP: f64 = 1e-6;
}

impl Real for f32 {
    const ROUNDOFF: f64 = 1e-5;
    const LOOSE: f64 = 1e-4;
    const SNAP: f64 = 1e-4;
    const TINY: f64 = 0.0;
    const BOUND_SLACK: f64 = 1e-4;
    const FD_STEP: f64 = 1e-3;
}

/// `ceil(x)`, except that values within `T::SNAP` of an integer snap to it.
pub fn snapped_ceil<T: Real>(x: T) -> T {
    let r = x.round();
    if (x - r).abs() <= T::lit(T::SNAP) {
        r
    } else {
        x.ceil()
    }
}
