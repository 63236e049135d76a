//! Wynn's epsilon algorithm, the Shanks-transformation baseline.
//!
//! `ε_{-1}^{(n)} = 0`, `ε_0^{(n)} = s_n`,
//! `ε_{k+1}^{(n)} = ε_{k-1}^{(n+1)} + 1 / (ε_k^{(n+1)} - ε_k^{(n)})`.
//! Odd columns are intermediates; only even columns are estimates.

use crate::error::{Error, Result};
use crate::real::Real;

use super::RealSequence;

/// Differences at or below this many ulps of the operands count as vanishing.
const VANISHING_ULPS: f64 = 16.0;

/// The triangular epsilon table over the trailing `2M + 1` sums, where `2M`
/// is the largest even column the input supports.
///
/// `columns[k][n]` holds `ε_k^{(start + n)}`; column growth stops at the
/// first vanishing difference.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonTable<T> {
    columns: Vec<Vec<T>>,
    start: usize,
    max_even_column: usize,
    guard_triggered: bool,
}

impl<T: Real> EpsilonTable<T> {
    pub fn build(s: &RealSequence<T>) -> Result<Self> {
        if s.len() < 3 {
            return Err(Error::TooShort {
                needed: 3,
                got: s.len(),
            });
        }
        let last = s.len() - 1;
        let target = last - last % 2;
        let start = last - target;
        let tiny = T::epsilon() * T::lit(VANISHING_ULPS);

        let mut columns = vec![s.as_slice()[start..].to_vec()];
        let mut below = vec![T::zero(); columns[0].len() + 1];
        let mut guard_triggered = false;
        for _ in 0..target {
            let cur = columns.last().expect("column 0 present");
            let mut next = Vec::with_capacity(cur.len() - 1);
            for n in 0..cur.len() - 1 {
                let diff = cur[n + 1] - cur[n];
                let scale = cur[n + 1].abs().max(cur[n].abs());
                if diff == T::zero() || diff.abs() <= tiny * scale {
                    guard_triggered = true;
                    break;
                }
                next.push(below[n + 1] + diff.recip());
            }
            if guard_triggered {
                break;
            }
            below = cur.clone();
            columns.push(next);
        }
        let mut max_even_column = columns.len() - 1;
        max_even_column -= max_even_column % 2;
        columns.truncate(max_even_column + 1);
        Ok(Self {
            columns,
            start,
            max_even_column,
            guard_triggered,
        })
    }

    pub fn max_even_column(&self) -> usize {
        self.max_even_column
    }

    /// Whether column growth was cut short by a vanishing difference.
    pub fn guard_triggered(&self) -> bool {
        self.guard_triggered
    }

    /// `ε_k^{(n)}` if it was computed.
    pub fn entry(&self, k: usize, n: usize) -> Option<T> {
        let col = self.columns.get(k)?;
        col.get(n.checked_sub(self.start)?).copied()
    }

    /// Last entry of the highest completed even column.
    pub fn estimate(&self) -> T {
        *self.columns[self.max_even_column]
            .last()
            .expect("even columns are nonempty")
    }

    /// Last entries of every even column, lowest first.
    pub fn even_diagonal(&self) -> Vec<T> {
        self.columns
            .iter()
            .step_by(2)
            .map(|c| *c.last().expect("nonempty"))
            .collect()
    }
}

/// Best epsilon-algorithm estimate from the given partial sums.
pub fn epsilon_estimate<T: Real>(s: &RealSequence<T>) -> Result<T> {
    Ok(EpsilonTable::build(s)?.estimate())
}
