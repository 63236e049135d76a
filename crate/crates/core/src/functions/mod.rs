//! Special functions summed with the acceleration drivers: the Lerch
//! transcendent `Φ(z, s, v) = Σ_{n≥0} zⁿ / (n+v)^s` and its special cases.

mod harmonic;

pub use harmonic::{
    euler_harmonic_sum, euler_sum_term, harmonic_asymptotic, harmonic_exact, harmonic_number,
    EULER_MASCHERONI, EULER_MASCHERONI_DIGITS, HARMONIC_CROSSOVER,
};

use crate::cnct::{cnct_sum, delta_sum, direct_sum, AccelResult, Method, ToleranceSpec};
use crate::error::{Error, Result};
use crate::real::Real;

/// Arguments of `Φ(z, s, v)` restricted to where the defining series converges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LerchParams<T> {
    z: T,
    s: T,
    v: T,
}

impl<T: Real> LerchParams<T> {
    /// Requires `v > 0` and `-1 < z ≤ 1`, with `s > 1` when `z = 1`.
    pub fn new(z: T, s: T, v: T) -> Result<Self> {
        if !(z.is_finite() && s.is_finite() && v.is_finite()) {
            return Err(Error::Domain("Lerch parameters must be finite".into()));
        }
        if !(v > T::zero()) {
            return Err(Error::Domain(format!(
                "Lerch shift v must be positive, got {v}"
            )));
        }
        if !(z > -T::one() && z <= T::one()) {
            return Err(Error::Domain(format!(
                "Lerch argument z must lie in (-1, 1], got {z}"
            )));
        }
        if z == T::one() && !(s > T::one()) {
            return Err(Error::Domain(format!("z = 1 requires s > 1, got s = {s}")));
        }
        Ok(Self { z, s, v })
    }

    pub fn z(&self) -> T {
        self.z
    }

    pub fn s(&self) -> T {
        self.s
    }

    pub fn v(&self) -> T {
        self.v
    }

    /// `zⁿ (n+v)^(-s)`.
    #[inline]
    pub fn term(&self, n: u64) -> T {
        if self.z == T::zero() {
            return if n == 0 {
                self.v.powf(-self.s)
            } else {
                T::zero()
            };
        }
        let x = T::from_index(n);
        self.z.powf(x) * (x + self.v).powf(-self.s)
    }
}

/// Which summation method `lerch_phi` uses for a given `z`.
///
/// Above `cnct_above` the terms are nonnegative and slowly decaying, so the
/// series is condensed and accelerated; below `delta_below` the terms
/// alternate and the delta transformation is applied directly; in between,
/// geometric decay makes plain summation adequate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LerchDispatch<T> {
    pub cnct_above: T,
    pub delta_below: T,
}

impl<T: Real> Default for LerchDispatch<T> {
    fn default() -> Self {
        Self {
            cnct_above: T::lit(0.5),
            delta_below: T::lit(-0.5),
        }
    }
}

impl<T: Real> LerchDispatch<T> {
    pub fn method_for(&self, z: T) -> Method {
        if z > self.cnct_above {
            Method::Cnct
        } else if z < self.delta_below {
            Method::DeltaDirect
        } else {
            Method::Direct
        }
    }
}

/// Sums any term oracle with the method selected for `z`.
pub(crate) fn sum_by_method<T, F>(
    method: Method,
    oracle: F,
    tol: ToleranceSpec<T>,
) -> Result<AccelResult<T>>
where
    T: Real,
    F: Fn(u64) -> T,
{
    match method {
        Method::Cnct => cnct_sum(oracle, tol),
        Method::DeltaDirect => delta_sum(oracle, tol),
        Method::Direct => direct_sum(oracle, tol),
    }
}

/// `Φ(z, s, v)` with the default dispatch thresholds `±0.5`.
pub fn lerch_phi<T: Real>(p: LerchParams<T>, tol: ToleranceSpec<T>) -> Result<AccelResult<T>> {
    lerch_phi_with(p, tol, LerchDispatch::default())
}

pub fn lerch_phi_with<T: Real>(
    p: LerchParams<T>,
    tol: ToleranceSpec<T>,
    dispatch: LerchDispatch<T>,
) -> Result<AccelResult<T>> {
    sum_by_method(dispatch.method_for(p.z), move |n| p.term(n), tol)
}

/// Hurwitz zeta `ζ(s, v) = Φ(1, s, v)`.
pub fn hurwitz_zeta<T: Real>(s: T, v: T, tol: ToleranceSpec<T>) -> Result<AccelResult<T>> {
    lerch_phi(LerchParams::new(T::one(), s, v)?, tol)
}

/// Riemann zeta `ζ(s)` for `s > 1`.
pub fn riemann_zeta<T: Real>(s: T, tol: ToleranceSpec<T>) -> Result<AccelResult<T>> {
    if !(s > T::one()) {
        return Err(Error::Domain(format!("zeta requires s > 1, got {s}")));
    }
    hurwitz_zeta(s, T::one(), tol)
}

/// Polylogarithm `Li_s(z) = Σ_{n≥1} zⁿ/n^s = z Φ(z, s, 1)`.
pub fn polylog<T: Real>(s: T, z: T, tol: ToleranceSpec<T>) -> Result<AccelResult<T>> {
    let p = LerchParams::new(z, s, T::one())?;
    Ok(lerch_phi(p, tol)?.scaled(z))
}
