//! The real-arithmetic contract every algorithm in this crate is written against.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Scalar type usable by the kernel, condensation, drivers and special functions.
///
/// Beyond field operations and comparison, implementors supply the breakdown
/// floor used by the delta accelerator: the smallest denominator magnitude that
/// is still trusted. It must sit above the subnormal range of the type.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Denominators of smaller magnitude are treated as a breakdown.
    fn breakdown_floor() -> Self;

    /// Converts an `f64` literal. Panics only if the type cannot represent
    /// ordinary finite constants, which no implementor does.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Converts a series index. Rounds to nearest above the mantissa width.
    #[inline]
    fn from_index(k: u64) -> Self {
        Self::from_u64(k).expect("index representable in scalar type")
    }
}

impl Real for f64 {
    #[inline]
    fn breakdown_floor() -> Self {
        1e-280
    }
}

impl Real for f32 {
    #[inline]
    fn breakdown_floor() -> Self {
        1e-35
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Real> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            carry: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry = self.carry + ((self.sum - t) + x);
        } else {
            self.carry = self.carry + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.carry
    }
}
