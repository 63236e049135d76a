//! Summation drivers: the combined condensation + delta transformation, direct
//! delta acceleration of the raw series, and plain term-by-term summation.

use std::fmt;

use crate::condense::CondensedSeries;
use crate::error::{Error, Result};
use crate::kernel::DeltaAccelerator;
use crate::oracle::TermOracle;
use crate::real::{CompensatedSum, Real};

/// Inner condensation sums are truncated this much tighter than the outer target.
pub const INNER_TOLERANCE_FACTOR: f64 = 1e-2;

/// Floor on error estimates, in units of the working epsilon times |value|.
const ROUNDOFF_ULPS: f64 = 2.0;

/// Minimum multiplier on the last term in direct summation's error estimate.
pub const DIRECT_SAFETY_FACTOR: f64 = 10.0;

/// Consecutive negligible terms required before direct summation stops.
const DIRECT_QUIET_RUN: u32 = 3;

/// Stopping tolerances shared by all drivers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceSpec<T> {
    pub rel_tol: T,
    pub abs_floor: T,
    pub max_order: usize,
    pub max_terms: u64,
}

impl<T: Real> Default for ToleranceSpec<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-14),
            abs_floor: T::lit(1e-300),
            max_order: 50,
            max_terms: 10_000_000,
        }
    }
}

impl<T: Real> ToleranceSpec<T> {
    pub fn with_rel_tol(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_order(mut self, max_order: usize) -> Self {
        self.max_order = max_order;
        self
    }

    pub fn with_max_terms(mut self, max_terms: u64) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > T::zero()) {
            return Err(Error::Domain("rel_tol must be positive".into()));
        }
        if !(self.abs_floor >= T::zero()) {
            return Err(Error::Domain("abs_floor must be nonnegative".into()));
        }
        if self.max_order < 2 {
            return Err(Error::Domain("max_order must be at least 2".into()));
        }
        if self.max_terms < 1 {
            return Err(Error::Domain("max_terms must be at least 1".into()));
        }
        Ok(())
    }

    fn threshold(&self, value: T) -> T {
        self.rel_tol * value.abs().max(self.abs_floor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Cnct,
    DeltaDirect,
    Direct,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Cnct => "cnct",
            Method::DeltaDirect => "delta_direct",
            Method::Direct => "direct",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why a driver stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Converged,
    MaxOrder,
    MaxTerms,
    Breakdown,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccelResult<T> {
    pub value: T,
    pub error_estimate: T,
    /// Transformation order of `value`; -1 for direct summation.
    pub order: i64,
    /// Oracle evaluations performed.
    pub terms_used: u64,
    pub converged: bool,
    pub method: Method,
    pub stop: StopReason,
}

impl<T: Real> AccelResult<T> {
    /// Multiplies value and error estimate by `c`.
    pub fn scaled(mut self, c: T) -> Self {
        self.value = self.value * c;
        self.error_estimate = self.error_estimate * c.abs();
        self
    }
}

/// Convergence bookkeeping over a stream of diagonal estimates.
struct DiagonalMonitor<T> {
    tol: ToleranceSpec<T>,
    history: [Option<T>; 3],
}

impl<T: Real> DiagonalMonitor<T> {
    fn new(tol: ToleranceSpec<T>) -> Self {
        Self {
            tol,
            history: [None; 3],
        }
    }

    fn observe(&mut self, estimate: T) {
        self.history = [self.history[1], self.history[2], Some(estimate)];
    }

    fn value(&self) -> Option<T> {
        self.history[2]
    }

    fn error_estimate(&self) -> T {
        let value = self.history[2].unwrap_or_else(T::zero);
        let mut err = value.abs() * T::epsilon() * T::lit(ROUNDOFF_ULPS);
        let mut any = false;
        for w in self.history.windows(2) {
            if let [Some(a), Some(b)] = *w {
                err = err.max((b - a).abs());
                any = true;
            }
        }
        if any {
            err
        } else {
            T::infinity()
        }
    }

    /// Both of the last two consecutive differences are within tolerance.
    fn converged(&self) -> bool {
        let [Some(a), Some(b), Some(c)] = self.history else {
            return false;
        };
        let thr = self.tol.threshold(c);
        (c - b).abs() <= thr && (b - a).abs() <= thr && self.error_estimate() <= thr
    }

    fn finish(
        &self,
        order: usize,
        terms_used: u64,
        method: Method,
        stop: StopReason,
    ) -> AccelResult<T> {
        let converged = stop == StopReason::Converged;
        AccelResult {
            value: self.value().unwrap_or_else(T::nan),
            error_estimate: self.error_estimate(),
            order: order as i64,
            terms_used,
            converged,
            method,
            stop,
        }
    }
}

fn is_breakdown(err: &Error) -> bool {
    matches!(
        err,
        Error::Breakdown { .. } | Error::InteriorZeroDifference { .. }
    )
}

/// One row of a convergence table: `δ_n^{(0)}(1, S)` of the condensed series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow<T> {
    pub order: usize,
    pub estimate: T,
    /// Oracle evaluations needed to produce this row.
    pub terms_used: u64,
}

/// Rows for orders `0..=n_max`, possibly cut short.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable<T> {
    pub rows: Vec<TableRow<T>>,
    /// Breakdown or budget exhaustion that ended the table early.
    pub truncated: Option<Error>,
}

/// Streams condensed partial sums `S_0, S_1, ...` into a delta accelerator.
struct CnctStream<T, O> {
    series: CondensedSeries<T, O>,
    acc: DeltaAccelerator<T>,
    partial: T,
    next_j: u64,
}

impl<T: Real, O: TermOracle<T>> CnctStream<T, O> {
    fn new(oracle: O, tol: &ToleranceSpec<T>) -> Result<Self> {
        tol.validate()?;
        let inner = tol.rel_tol * T::lit(INNER_TOLERANCE_FACTOR);
        Ok(Self {
            series: CondensedSeries::new(oracle, inner)?.with_budget(tol.max_terms),
            acc: DeltaAccelerator::new(),
            partial: T::zero(),
            next_j: 0,
        })
    }

    /// Pulls the next condensed term and returns the new estimate, if any.
    fn step(&mut self) -> Result<Option<T>> {
        let j = self.next_j;
        let a = self.series.condensed_term(j)?;
        self.next_j += 1;
        self.partial = if j % 2 == 0 {
            self.partial + a
        } else {
            self.partial - a
        };
        self.acc.push(self.partial)
    }
}

/// Sums a nonnegative series by condensing it and accelerating the
/// condensed alternating series with the delta transformation (`β = 1`).
///
/// Converged when the last two consecutive diagonal differences are both
/// within `rel_tol`. Running out of order or term budget, or a kernel
/// breakdown, returns the best estimate with `converged = false`. Negative or
/// non-finite terms and undecayed inner sums are errors.
pub fn cnct_sum<T, O>(oracle: O, tol: ToleranceSpec<T>) -> Result<AccelResult<T>>
where
    T: Real,
    O: TermOracle<T>,
{
    let mut stream = CnctStream::new(oracle, &tol)?;
    let mut monitor = DiagonalMonitor::new(tol);
    loop {
        let order = stream.acc.order().unwrap_or(0);
        let calls = stream.series.calls();
        match stream.step() {
            Ok(Some(est)) => monitor.observe(est),
            Ok(None) => continue,
            Err(Error::BudgetExhausted { .. }) => {
                return Ok(monitor.finish(order, calls, Method::Cnct, StopReason::MaxTerms));
            }
            Err(e) if is_breakdown(&e) => {
                let calls = stream.series.calls();
                return Ok(monitor.finish(order, calls, Method::Cnct, StopReason::Breakdown));
            }
            Err(e) => return Err(e),
        }
        let order = stream.acc.order().expect("estimate implies order");
        let calls = stream.series.calls();
        if monitor.converged() {
            return Ok(monitor.finish(order, calls, Method::Cnct, StopReason::Converged));
        }
        if order >= tol.max_order {
            return Ok(monitor.finish(order, calls, Method::Cnct, StopReason::MaxOrder));
        }
    }
}

/// Diagonal estimates `δ_n^{(0)}(1, S)` for `n = 0..=n_max` of the condensed
/// series. Row 0 is the first condensed term `A_0`.
pub fn cnct_table<T, O>(
    oracle: O,
    n_max: usize,
    tol: ToleranceSpec<T>,
) -> Result<ConvergenceTable<T>>
where
    T: Real,
    O: TermOracle<T>,
{
    let mut stream = CnctStream::new(oracle, &tol)?;
    let mut rows = Vec::with_capacity(n_max + 1);
    while rows.len() <= n_max {
        match stream.step() {
            Ok(Some(estimate)) => rows.push(TableRow {
                order: rows.len(),
                estimate,
                terms_used: stream.series.calls(),
            }),
            Ok(None) => {}
            Err(e) if is_breakdown(&e) || matches!(e, Error::BudgetExhausted { .. }) => {
                return Ok(ConvergenceTable {
                    rows,
                    truncated: Some(e),
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ConvergenceTable {
        rows,
        truncated: None,
    })
}

/// Applies the delta transformation directly to the partial sums of the
/// series. Intended for alternating-type input.
pub fn delta_sum<T, O>(oracle: O, tol: ToleranceSpec<T>) -> Result<AccelResult<T>>
where
    T: Real,
    O: TermOracle<T>,
{
    tol.validate()?;
    let mut acc = DeltaAccelerator::new();
    let mut monitor = DiagonalMonitor::new(tol);
    let mut partial = T::zero();
    let mut calls = 0u64;
    loop {
        let order = acc.order().unwrap_or(0);
        if calls >= tol.max_terms {
            return Ok(monitor.finish(order, calls, Method::DeltaDirect, StopReason::MaxTerms));
        }
        let a = oracle.term(calls);
        if !a.is_finite() {
            return Err(Error::NonFiniteTerm { index: calls });
        }
        calls += 1;
        partial = partial + a;
        match acc.push(partial) {
            Ok(Some(est)) => monitor.observe(est),
            Ok(None) => continue,
            Err(e) if is_breakdown(&e) => {
                return Ok(monitor.finish(
                    order,
                    calls,
                    Method::DeltaDirect,
                    StopReason::Breakdown,
                ));
            }
            Err(e) => return Err(e),
        }
        let order = acc.order().expect("estimate implies order");
        if monitor.converged() {
            return Ok(monitor.finish(order, calls, Method::DeltaDirect, StopReason::Converged));
        }
        if order >= tol.max_order {
            return Ok(monitor.finish(order, calls, Method::DeltaDirect, StopReason::MaxOrder));
        }
    }
}

/// Term-by-term summation, the baseline the accelerated methods are measured
/// against.
///
/// Heuristic stop: the bound `max(10, n+1)·|a(n)|` on the remaining tail falls
/// below `rel_tol·|s_n|` for three consecutive terms. That bound is also the
/// reported error estimate. The `n+1` factor covers power-law tails, which the
/// last term alone underestimates by a factor growing with `n`.
pub fn direct_sum<T, O>(oracle: O, tol: ToleranceSpec<T>) -> Result<AccelResult<T>>
where
    T: Real,
    O: TermOracle<T>,
{
    tol.validate()?;
    let mut sum = CompensatedSum::new();
    let mut quiet = 0u32;
    let mut err = T::infinity();
    let safety = T::lit(DIRECT_SAFETY_FACTOR);
    for n in 0..tol.max_terms {
        let a = oracle.term(n);
        if !a.is_finite() {
            return Err(Error::NonFiniteTerm { index: n });
        }
        sum.add(a);
        let value = sum.value();
        err = a.abs() * safety.max(T::from_index(n + 1));
        if err <= tol.threshold(value) {
            quiet += 1;
            if quiet >= DIRECT_QUIET_RUN {
                return Ok(AccelResult {
                    value,
                    error_estimate: err,
                    order: -1,
                    terms_used: n + 1,
                    converged: true,
                    method: Method::Direct,
                    stop: StopReason::Converged,
                });
            }
        } else {
            quiet = 0;
        }
    }
    Ok(AccelResult {
        value: sum.value(),
        error_estimate: err,
        order: -1,
        terms_used: tol.max_terms,
        converged: false,
        method: Method::Direct,
        stop: StopReason::MaxTerms,
    })
}
