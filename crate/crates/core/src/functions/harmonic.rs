//! Harmonic numbers and the Euler sum `Σ H_k² / k²`.

use std::sync::OnceLock;

use crate::cnct::{cnct_sum, AccelResult, ToleranceSpec};
use crate::error::Result;
use crate::real::{CompensatedSum, Real};

/// Euler–Mascheroni constant to 30 significant digits.
pub const EULER_MASCHERONI_DIGITS: &str = "0.577215664901532860606512090082";

#[allow(clippy::excessive_precision)]
pub const EULER_MASCHERONI: f64 = 0.577215664901532860606512090082;

/// Largest `k` served from the exact table; above it the asymptotic series is used.
pub const HARMONIC_CROSSOVER: u64 = 10_000;

fn table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut h = Vec::with_capacity(HARMONIC_CROSSOVER as usize + 1);
        let mut acc = CompensatedSum::<f64>::new();
        h.push(0.0);
        for j in 1..=HARMONIC_CROSSOVER {
            acc.add(1.0 / j as f64);
            h.push(acc.value());
        }
        h
    })
}

fn euler_gamma<T: Real>() -> T {
    T::from_str_radix(EULER_MASCHERONI_DIGITS, 10)
        .ok()
        .unwrap_or_else(|| T::lit(EULER_MASCHERONI))
}

/// `H_k = 1 + 1/2 + ... + 1/k` by the running sum. `O(k)`; no table.
pub fn harmonic_exact<T: Real>(k: u64) -> T {
    let mut acc = CompensatedSum::new();
    for j in 1..=k {
        acc.add(T::one() / T::from_index(j));
    }
    acc.value()
}

/// `H_k ≈ ln k + γ + 1/(2k) − 1/(12k²) + 1/(120k⁴)`, truncation error `O(k⁻⁶)`.
pub fn harmonic_asymptotic<T: Real>(k: u64) -> T {
    let x = T::from_index(k);
    let inv = x.recip();
    let inv2 = inv * inv;
    let tail = inv * T::lit(0.5) - inv2 * T::lit(1.0 / 12.0) + inv2 * inv2 * T::lit(1.0 / 120.0);
    x.ln() + euler_gamma::<T>() + tail
}

/// `H_k`; `H_0 = 0`.
///
/// Values up to [`HARMONIC_CROSSOVER`] come from a table built once, on first
/// use, by compensated summation in `f64`; beyond it the asymptotic series is
/// evaluated in `T`.
pub fn harmonic_number<T: Real>(k: u64) -> T {
    if k <= HARMONIC_CROSSOVER {
        T::lit(table()[k as usize])
    } else {
        harmonic_asymptotic(k)
    }
}

/// Term `H_{k+1}² / (k+1)²` of the Euler sum.
pub fn euler_sum_term<T: Real>(k: u64) -> T {
    let n = k + 1;
    let h: T = harmonic_number(n);
    let ratio = h / T::from_index(n);
    ratio * ratio
}

/// `Σ_{k≥1} H_k² / k²` (`= 17π⁴/360`) by condensation + delta acceleration.
pub fn euler_harmonic_sum<T: Real>(tol: ToleranceSpec<T>) -> Result<AccelResult<T>> {
    cnct_sum(euler_sum_term::<T>, tol)
}
