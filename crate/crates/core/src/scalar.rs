use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point scalar that the numerical kernels are written against.
///
/// Implemented for `f32` and `f64`. Every tolerance in the crate is expressed
/// as an `f64` literal and lifted into `Self` through [`Scalar::lit`].
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Sum + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Lift an `f64` constant into this scalar type.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant representable in scalar type")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }

    /// Lossy conversion used for error payloads and diagnostics.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// A tolerance of at least `rel` that never drops below a few ulps of
    /// this type, so `f64` defaults carry over to `f32` sensibly.
    fn tol(rel: f64) -> Self {
        Self::lit(rel).max(Self::epsilon() * Self::lit(16.0))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
