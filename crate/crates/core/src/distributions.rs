//! The discrete Lerch family: `P(X = k) = zᵏ (k+v)^(-s) / Φ(z, s, v)` on
//! `k = 0, 1, 2, ...`.
//!
//! Special cases: Zipf (`z = 1, v = 1`, shifted so rank 1 is `k = 0`),
//! Zipf–Mandelbrot / Hurwitz (`z = 1`), geometric (`s = 0`).

use crate::cnct::{AccelResult, Method, ToleranceSpec};
use crate::error::{Error, Result};
use crate::functions::{lerch_phi_with, sum_by_method, LerchDispatch, LerchParams};
use crate::real::Real;

/// Quantile scans give up after this many support points.
pub const QUANTILE_SCAN_CAP: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LerchDistribution<T> {
    params: LerchParams<T>,
    norm: AccelResult<T>,
    tol: ToleranceSpec<T>,
}

impl<T: Real> LerchDistribution<T> {
    /// Computes the normalizer `Φ(z, s, v)`. Requires `0 ≤ z ≤ 1`; `z = 0`
    /// is the point mass at zero.
    pub fn new(params: LerchParams<T>, tol: ToleranceSpec<T>) -> Result<Self> {
        if params.z() < T::zero() {
            return Err(Error::Domain(format!(
                "distribution needs z >= 0 for nonnegative probabilities, got {}",
                params.z()
            )));
        }
        let norm = lerch_phi_with(params, tol, LerchDispatch::default())?;
        if !norm.converged {
            return Err(Error::Domain(format!(
                "normalizer Phi({}, {}, {}) did not converge (stopped: {:?})",
                params.z(),
                params.s(),
                params.v(),
                norm.stop
            )));
        }
        if !(norm.value > T::zero()) || !norm.value.is_finite() {
            return Err(Error::Domain(format!(
                "normalizer {} is not positive and finite",
                norm.value
            )));
        }
        Ok(Self { params, norm, tol })
    }

    pub fn params(&self) -> LerchParams<T> {
        self.params
    }

    /// `Φ(z, s, v)`.
    pub fn norm(&self) -> T {
        self.norm.value
    }

    pub fn norm_err(&self) -> T {
        self.norm.error_estimate
    }

    /// Summation diagnostics of the normalizer.
    pub fn norm_result(&self) -> &AccelResult<T> {
        &self.norm
    }

    pub fn pmf(&self, k: u64) -> T {
        (self.params.term(k) / self.norm.value).min(T::one())
    }

    /// Running sum `pmf(0) + ... + pmf(k)`, clamped to `[0, 1]`.
    pub fn cdf(&self, k: u64) -> T {
        let mut acc = T::zero();
        for j in 0..=k {
            acc = acc + self.pmf(j);
        }
        acc.max(T::zero()).min(T::one())
    }

    /// Smallest `k` with `cdf(k) ≥ p`, for `0 ≤ p < 1`.
    ///
    /// The scan stops with [`Error::HeavyTail`] at [`QUANTILE_SCAN_CAP`] or
    /// as soon as further terms can no longer move the running sum.
    pub fn quantile(&self, p: T) -> Result<u64> {
        self.quantile_with_cap(p, QUANTILE_SCAN_CAP)
    }

    pub fn quantile_with_cap(&self, p: T, cap: u64) -> Result<u64> {
        if !(p >= T::zero() && p < T::one()) {
            return Err(Error::Domain(format!(
                "quantile level must be in [0, 1), got {p}"
            )));
        }
        let heavy = |scanned| Error::HeavyTail {
            p: p.to_f64().unwrap_or(f64::NAN),
            scanned,
        };
        let mut acc = T::zero();
        for k in 0..cap {
            let next = acc + self.pmf(k);
            if next.max(T::zero()).min(T::one()) >= p {
                return Ok(k);
            }
            if next == acc && k > 0 {
                return Err(heavy(k + 1));
            }
            acc = next;
        }
        Err(heavy(cap))
    }

    /// `E[X^r]`, accelerated by condensation when `z > 0.5` and summed
    /// directly otherwise. When `z = 1` the moment exists only for `s > r + 1`.
    pub fn moment(&self, r: u32) -> Result<AccelResult<T>> {
        self.moment_with(r, self.tol)
    }

    pub fn moment_with(&self, r: u32, tol: ToleranceSpec<T>) -> Result<AccelResult<T>> {
        if r == 0 {
            return Err(Error::Domain("moment order r must be positive".into()));
        }
        let p = self.params;
        let order = T::from_u32(r).expect("small integer");
        if p.z() == T::one() && !(p.s() > order + T::one()) {
            return Err(Error::Domain(format!(
                "moment of order {r} needs s > {}, got s = {}",
                r + 1,
                p.s()
            )));
        }
        let method = if p.z() > T::lit(0.5) {
            Method::Cnct
        } else {
            Method::Direct
        };
        let weighted = move |k: u64| {
            let t = p.term(k);
            if t == T::zero() {
                t
            } else {
                T::from_index(k).powi(r as i32) * t
            }
        };
        let raw = sum_by_method(method, weighted, tol)?;
        let value = raw.value / self.norm.value;
        let rel_norm = self.norm.error_estimate / self.norm.value;
        let rel_raw = if raw.value == T::zero() {
            T::zero()
        } else {
            raw.error_estimate / raw.value.abs()
        };
        Ok(AccelResult {
            value,
            error_estimate: value.abs() * (rel_raw + rel_norm),
            ..raw
        })
    }
}
