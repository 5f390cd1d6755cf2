//! Scalar abstraction shared by every numeric routine in the crate.

use nalgebra::RealField;
use num_traits::{FloatConst, ToPrimitive};
use std::fmt::{Debug, Display};

/// Real floating-point scalar the measures are computed in (`f32` or `f64`).
///
/// Besides the arithmetic supplied by [`RealField`], each implementation
/// carries the tolerances that depend on its precision. The values used for
/// `f64` are the ones the measures are specified against; the `f32` values
/// are scaled so that the same checks remain meaningful at single precision.
pub trait Real:
    RealField + Copy + FloatConst + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Slack allowed on `|x|^2 <= p(1 - p)` before a state is rejected.
    const PSD_SLACK: f64;
    /// Largest imaginary residue tolerated when a real quantity is summed
    /// from complex terms.
    const IMAG_RESIDUE: f64;
    /// Measure values in `(-CLAMP, 0)` are reported as exactly zero.
    const CLAMP: f64;
    /// Tolerance used when a computed matrix is checked for Hermiticity,
    /// unit trace and positivity.
    const MATRIX_TOL: f64;

    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(v: f64) -> Self {
        nalgebra::convert(v)
    }

    /// Lossy conversion to `f64` for reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const PSD_SLACK: f64 = 1e-12;
    const IMAG_RESIDUE: f64 = 1e-10;
    const CLAMP: f64 = 1e-10;
    const MATRIX_TOL: f64 = 1e-12;
}

impl Real for f32 {
    const PSD_SLACK: f64 = 1e-6;
    const IMAG_RESIDUE: f64 = 1e-4;
    const CLAMP: f64 = 1e-5;
    const MATRIX_TOL: f64 = 1e-5;
}

/// Returns `0` for values in `(-T::CLAMP, 0)`, otherwise `v` unchanged.
#[inline]
pub(crate) fn clamp_noise<T: Real>(v: T) -> T {
    if v < T::zero() && v > -T::lit(T::CLAMP) {
        T::zero()
    } else {
        v
    }
}
