//! Floating-point scalar abstraction shared by every numeric kernel.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar type the whole toolkit is generic over.
///
/// Grids, transforms, norms, and operators accept any implementor; `f32` and
/// `f64` are provided. The `rustfft::FftNum` bound lets the same scalar drive
/// the FFT engine directly.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum<Self>
    + Debug
    + Display
    + Send
    + Sync
    + rustfft::FftNum
    + 'static
{
    /// Lossy conversion from a grid size or index.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("grid size representable in scalar type")
    }

    /// Lossy conversion from an `f64` constant (tolerances, exponents).
    fn of_f64(v: f64) -> Self {
        Self::from_f64(v).expect("constant representable in scalar type")
    }

    /// Widening view as `f64` (for reporting and slope fits).
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar representable as f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
