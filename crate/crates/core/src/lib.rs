//! Convergence acceleration by Van Wijngaarden condensation followed by the
//! delta transformation, with the Lerch-family special functions and discrete
//! distributions built on it.
//!
//! All algorithms are generic over [`Real`]; the `*64` aliases below fix the
//! scalar to `f64`.
//!
//! ```
//! use cnct_core::{cnct_sum, ToleranceSpec64};
//!
//! let r = cnct_sum(|k: u64| 1.0 / ((k + 1) as f64).powi(2), ToleranceSpec64::default()).unwrap();
//! assert!(r.converged);
//! assert!((r.value - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-15);
//! ```

pub mod cnct;
pub mod condense;
pub mod distributions;
pub mod error;
pub mod functions;
pub mod kernel;
pub mod oracle;
pub mod real;

pub use cnct::{
    cnct_sum, cnct_table, delta_sum, direct_sum, AccelResult, ConvergenceTable, Method, StopReason,
    TableRow, ToleranceSpec,
};
pub use condense::CondensedSeries;
pub use distributions::LerchDistribution;
pub use error::{Error, Result};
pub use functions::{
    euler_harmonic_sum, harmonic_number, hurwitz_zeta, lerch_phi, lerch_phi_with, polylog,
    riemann_zeta, LerchDispatch, LerchParams,
};
pub use kernel::{
    delta_estimate, epsilon_estimate, partial_sums, DeltaAccelerator, EpsilonTable, RealSequence,
};
pub use oracle::{Scaled, TermOracle};
pub use real::Real;

pub type RealSequence64 = RealSequence<f64>;
pub type DeltaAccelerator64 = DeltaAccelerator<f64>;
pub type EpsilonTable64 = EpsilonTable<f64>;
pub type ToleranceSpec64 = ToleranceSpec<f64>;
pub type AccelResult64 = AccelResult<f64>;
pub type TableRow64 = TableRow<f64>;
pub type LerchParams64 = LerchParams<f64>;
pub type LerchDispatch64 = LerchDispatch<f64>;
pub type LerchDistribution64 = LerchDistribution<f64>;
