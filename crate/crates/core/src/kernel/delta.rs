//! Weniger's delta transformation with remainder estimates `ω_n = s_{n+1} - s_n`.
//!
//! The order-`k` diagonal estimate is
//!
//! ```text
//!            Σ_j (-1)^j C(k,j) (β+j)_{k-1}/(β+k)_{k-1} · s_j/ω_j
//! δ_k(β) = ---------------------------------------------------
//!            Σ_j (-1)^j C(k,j) (β+j)_{k-1}/(β+k)_{k-1} · 1/ω_j
//! ```
//!
//! evaluated through the numerator/denominator recursion
//! `X_{k+1}^{(n)} = X_k^{(n+1)} - c(n,k) X_k^{(n)}` with
//! `c(n,k) = (β+n+k)(β+n+k-1) / ((β+n+2k)(β+n+2k-1))` and `c(n,0) = 1`.
//! The accelerator keeps only the moving boundary `X_k^{(m-k)}`, so each new
//! partial sum costs O(m).

use crate::error::{Error, Result};
use crate::real::Real;

use super::RealSequence;

pub const DEFAULT_BETA: f64 = 1.0;

#[derive(Debug, Clone, PartialEq)]
enum State<T> {
    Healthy,
    /// A remainder estimate vanished; the series is taken to be finite with
    /// the stored sum, pending confirmation by further zero differences.
    Terminated {
        sum: T,
        at: usize,
    },
    Broken(Error),
}

/// Online delta transformation: feed partial sums one at a time.
///
/// After consuming `s_0, ..., s_{N+1}` the current estimate is `δ_N^{(0)}(β)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaAccelerator<T> {
    beta: T,
    num: Vec<T>,
    den: Vec<T>,
    first: Option<T>,
    last_sum: Option<T>,
    count: usize,
    last_estimates: [Option<T>; 2],
    state: State<T>,
}

impl<T: Real> Default for DeltaAccelerator<T> {
    fn default() -> Self {
        Self::with_beta(T::lit(DEFAULT_BETA)).expect("default beta is positive")
    }
}

impl<T: Real> DeltaAccelerator<T> {
    /// Accelerator with `β = 1`.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_beta(beta: T) -> Result<Self> {
        if !(beta > T::zero()) || !beta.is_finite() {
            return Err(Error::Domain(format!(
                "delta shift beta must be positive, got {beta}"
            )));
        }
        Ok(Self {
            beta,
            num: Vec::new(),
            den: Vec::new(),
            first: None,
            last_sum: None,
            count: 0,
            last_estimates: [None, None],
            state: State::Healthy,
        })
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    /// Number of partial sums consumed.
    pub fn count(&self) -> usize {
        self.count
    }

    /// Transformation order of the current estimate, if there is one.
    pub fn order(&self) -> Option<usize> {
        self.count.checked_sub(2)
    }

    /// Most recent diagonal estimate; after a breakdown, the frozen one.
    pub fn estimate(&self) -> Option<T> {
        self.last_estimates[1]
    }

    /// The estimate before [`Self::estimate`].
    pub fn previous_estimate(&self) -> Option<T> {
        self.last_estimates[0]
    }

    pub fn is_broken(&self) -> bool {
        matches!(self.state, State::Broken(_))
    }

    pub fn is_terminated(&self) -> bool {
        matches!(self.state, State::Terminated { .. })
    }

    fn record(&mut self, estimate: T) {
        self.last_estimates = [self.last_estimates[1], Some(estimate)];
    }

    fn break_down(&mut self, err: Error) -> Error {
        self.state = State::Broken(err.clone());
        err
    }

    /// Consumes the next partial sum and returns the new estimate, or `None`
    /// while fewer than two sums have been seen.
    ///
    /// Breakdown is sticky: once a push fails, every later push returns the
    /// same error and [`Self::estimate`] keeps the last healthy value.
    pub fn push(&mut self, s_new: T) -> Result<Option<T>> {
        if let State::Broken(err) = &self.state {
            return Err(err.clone());
        }
        if !s_new.is_finite() {
            return Err(Error::NonFiniteSequence {
                position: self.count,
            });
        }
        let position = self.count;
        self.count += 1;
        let s_prev = match self.last_sum.replace(s_new) {
            None => {
                self.first = Some(s_new);
                return Ok(None);
            }
            Some(s) => s,
        };

        let omega = s_new - s_prev;
        if omega == T::zero() {
            let (sum, at) = match self.state {
                State::Terminated { sum, at } => (sum, at),
                _ => (s_prev, position - 1),
            };
            self.state = State::Terminated { sum, at };
            self.record(sum);
            return Ok(Some(sum));
        }
        if let State::Terminated { at, .. } = self.state {
            return Err(self.break_down(Error::InteriorZeroDifference { position: at }));
        }

        // Extend the moving boundary: entry k holds X_k^{(m-k)}.
        let m = self.num.len();
        let mut n_carry = s_prev / omega;
        let mut d_carry = T::one() / omega;
        for k in 0..m {
            let n = m - k - 1;
            let c = self.coefficient(n, k);
            let n_next = n_carry - c * self.num[k];
            let d_next = d_carry - c * self.den[k];
            self.num[k] = n_carry;
            self.den[k] = d_carry;
            n_carry = n_next;
            d_carry = d_next;
        }
        self.num.push(n_carry);
        self.den.push(d_carry);

        let estimate = if m == 0 {
            // δ_0 = s_0 exactly.
            self.first.expect("first sum recorded")
        } else {
            let d = self.den[m];
            if !(d.abs() >= T::breakdown_floor()) || !d.is_finite() {
                let last_estimate = self.estimate().and_then(|e| e.to_f64());
                return Err(self.break_down(Error::Breakdown { last_estimate }));
            }
            self.num[m] / d
        };
        if !estimate.is_finite() {
            let last_estimate = self.estimate().and_then(|e| e.to_f64());
            return Err(self.break_down(Error::Breakdown { last_estimate }));
        }
        self.record(estimate);
        Ok(Some(estimate))
    }

    #[inline]
    fn coefficient(&self, n: usize, k: usize) -> T {
        if k == 0 {
            return T::one();
        }
        let b = self.beta;
        let nk = b + T::from_usize(n + k).unwrap();
        let n2k = b + T::from_usize(n + 2 * k).unwrap();
        (nk * (nk - T::one())) / (n2k * (n2k - T::one()))
    }
}

/// Order-`N` delta estimate `δ_N^{(0)}(β)` from `N + 2` partial sums.
///
/// If a remainder estimate `ω_j` vanishes and all later ones do too, the
/// series is finite and the exact sum `s_j` is returned. A zero `ω_j`
/// followed by a nonzero one is an error.
pub fn delta_estimate<T: Real>(s: &RealSequence<T>, beta: T) -> Result<T> {
    if s.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: s.len(),
        });
    }
    let mut acc = DeltaAccelerator::with_beta(beta)?;
    for &x in s.as_slice() {
        acc.push(x)?;
    }
    Ok(acc.estimate().expect("two or more sums pushed"))
}
