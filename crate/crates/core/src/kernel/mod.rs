//! Sequence-level transformations: partial sums, the delta transformation and
//! the Wynn epsilon algorithm.
//!
//! Everything here is a pure function of its input. Convergence decisions live
//! in [`crate::cnct`].

mod delta;
mod epsilon;

pub use delta::{delta_estimate, DeltaAccelerator, DEFAULT_BETA};
pub use epsilon::{epsilon_estimate, EpsilonTable};

use crate::error::{Error, Result};
use crate::oracle::TermOracle;
use crate::real::Real;

/// A finite list of finite reals `s_0, s_1, ..., s_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSequence<T>(Vec<T>);

impl<T: Real> RealSequence<T> {
    /// Rejects NaN and infinite entries.
    pub fn new(values: Vec<T>) -> Result<Self> {
        if let Some(position) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSequence { position });
        }
        Ok(Self(values))
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<T> {
        self.0.last().copied()
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }
}

impl<T> std::ops::Index<usize> for RealSequence<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Real> TryFrom<Vec<T>> for RealSequence<T> {
    type Error = Error;

    fn try_from(values: Vec<T>) -> Result<Self> {
        Self::new(values)
    }
}

/// Partial sums `s_n = a(0) + ... + a(n)` for `n = 0..=n_max`.
pub fn partial_sums<T, O>(oracle: &O, n_max: u64) -> Result<RealSequence<T>>
where
    T: Real,
    O: TermOracle<T> + ?Sized,
{
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut acc = T::zero();
    for k in 0..=n_max {
        let a = oracle.term(k);
        if !a.is_finite() {
            return Err(Error::NonFiniteTerm { index: k });
        }
        acc = acc + a;
        out.push(acc);
    }
    Ok(RealSequence(out))
}
