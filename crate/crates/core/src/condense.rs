//! Van Wijngaarden condensation.
//!
//! A series of nonnegative terms `a(0) + a(1) + ...` is rewritten as the
//! alternating series `Σ_j (-1)^j A_j` with
//!
//! ```text
//! A_j = Σ_{i≥0} 2^i · a(2^i (j+1) - 1).
//! ```
//!
//! An input index `k` with `k + 1 = 2^p q`, `q` odd, is probed by the `p + 1`
//! pairs `(i, j)` with `i ≤ p`; its signed weights `(-1)^j 2^i` sum to
//! `2^p - (2^p - 1) = 1`, so the two series share their sum. Inner sums decay geometrically for power-law
//! terms, which is what makes the transformed series cheap to evaluate.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::kernel::RealSequence;
use crate::oracle::TermOracle;
use crate::real::{CompensatedSum, Real};

pub const DEFAULT_MAX_INDEX: u64 = 1 << 62;

/// Ratios of the last inner terms must agree this closely, relatively, before
/// the remaining tail is summed as a geometric series at the index cap.
const GEOMETRIC_TAIL_RATIO_AGREEMENT: f64 = 1e-6;

/// Input index probed by inner step `i` of condensed term `j`, or `None` if it
/// does not fit in 64 bits.
pub fn condensation_index(i: u32, j: u64) -> Option<u64> {
    let base = j.checked_add(1)?;
    if i >= 64 || base.leading_zeros() < i {
        return None;
    }
    Some((base << i) - 1)
}

/// Lazily evaluated, memoized condensed terms `A_j` of a nonnegative series.
pub struct CondensedSeries<T, O> {
    oracle: O,
    inner_rel_tol: T,
    max_index: u64,
    budget: Option<u64>,
    memo: HashMap<u64, T>,
    calls: u64,
}

impl<T: Real, O: TermOracle<T>> CondensedSeries<T, O> {
    /// `inner_rel_tol` bounds each inner sum's truncation relative to its value.
    pub fn new(oracle: O, inner_rel_tol: T) -> Result<Self> {
        if !(inner_rel_tol > T::zero()) {
            return Err(Error::Domain(format!(
                "inner relative tolerance must be positive, got {inner_rel_tol}"
            )));
        }
        Ok(Self {
            oracle,
            inner_rel_tol,
            max_index: DEFAULT_MAX_INDEX,
            budget: None,
            memo: HashMap::new(),
            calls: 0,
        })
    }

    pub fn with_max_index(mut self, max_index: u64) -> Self {
        self.max_index = max_index;
        self
    }

    /// Caps the total number of oracle evaluations.
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    /// Oracle evaluations so far.
    pub fn calls(&self) -> u64 {
        self.calls
    }

    pub fn inner_rel_tol(&self) -> T {
        self.inner_rel_tol
    }

    fn probe(&mut self, index: u64) -> Result<T> {
        if let Some(budget) = self.budget {
            if self.calls >= budget {
                return Err(Error::BudgetExhausted { budget });
            }
        }
        self.calls += 1;
        let a = self.oracle.term(index);
        if !a.is_finite() {
            return Err(Error::NonFiniteTerm { index });
        }
        if a < T::zero() {
            return Err(Error::NegativeTerm {
                index,
                value: a.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(a)
    }

    /// `A_j`, summed until the next inner term is below `inner_rel_tol` times
    /// the running inner sum, underflows to zero, or would pass the index cap.
    ///
    /// At the cap, a remaining tail whose terms shrink by a stable ratio is
    /// added in closed form; any other undecayed tail is an error.
    pub fn condensed_term(&mut self, j: u64) -> Result<T> {
        if let Some(&a) = self.memo.get(&j) {
            return Ok(a);
        }
        let mut sum = CompensatedSum::new();
        let mut weight = T::one();
        let two = T::lit(2.0);
        let mut recent: [T; 3] = [T::zero(); 3];
        let mut i = 0u32;
        loop {
            let index = match condensation_index(i, j) {
                Some(k) if k <= self.max_index => k,
                _ => break,
            };
            let t = weight * self.probe(index)?;
            recent = [recent[1], recent[2], t];
            sum.add(t);
            let total = sum.value();
            if total > T::zero() && (t == T::zero() || t <= self.inner_rel_tol * total) {
                self.memo.insert(j, total);
                return Ok(total);
            }
            weight = weight * two;
            i += 1;
        }

        let total = sum.value();
        if total == T::zero() {
            self.memo.insert(j, total);
            return Ok(total);
        }
        // Cap reached with a live tail.
        let [t0, t1, t2] = recent;
        if i < 3 || t0 <= T::zero() || t1 <= T::zero() {
            return Err(Error::InnerNonConvergence { j });
        }
        let r1 = t1 / t0;
        let r2 = t2 / t1;
        let agree = (r2 - r1).abs() <= T::lit(GEOMETRIC_TAIL_RATIO_AGREEMENT) * r2;
        if !(r2 < T::one()) || !agree {
            return Err(Error::InnerNonConvergence { j });
        }
        let total = total + t2 * r2 / (T::one() - r2);
        self.memo.insert(j, total);
        Ok(total)
    }

    /// `S_m = Σ_{j=0}^{m} (-1)^j A_j` for `m = 0..=n`.
    pub fn condensed_partial_sums(&mut self, n: u64) -> Result<RealSequence<T>> {
        let mut out = Vec::with_capacity(n as usize + 1);
        let mut acc = T::zero();
        for j in 0..=n {
            let a = self.condensed_term(j)?;
            acc = if j % 2 == 0 { acc + a } else { acc - a };
            out.push(acc);
        }
        RealSequence::new(out)
    }
}
