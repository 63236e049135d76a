//! Built-in series selectable from the command line.

use cnct_core::functions::euler_sum_term;
use cnct_core::{
    euler_harmonic_sum, hurwitz_zeta, lerch_phi, polylog, riemann_zeta, AccelResult64, Error,
    LerchParams64, Result, ToleranceSpec64,
};

#[derive(Debug, Clone, Copy)]
pub enum Function {
    Zeta { s: f64 },
    Hurwitz { s: f64, v: f64 },
    Polylog { s: f64, z: f64 },
    Lerch(LerchParams64),
    EulerSum,
}

pub const NAMES: &str = "zeta S | hurwitz S V | polylog S Z | lerch Z S V | eulersum";

impl Function {
    pub fn parse(name: &str, args: &[f64]) -> Result<Self> {
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::Domain(format!(
                    "{name} takes {n} argument(s), got {}",
                    args.len()
                )))
            }
        };
        let f = match name {
            "zeta" => {
                arity(1)?;
                if !(args[0] > 1.0) {
                    return Err(Error::Domain(format!(
                        "zeta requires s > 1, got {}",
                        args[0]
                    )));
                }
                Function::Zeta { s: args[0] }
            }
            "hurwitz" => {
                arity(2)?;
                LerchParams64::new(1.0, args[0], args[1])?;
                Function::Hurwitz {
                    s: args[0],
                    v: args[1],
                }
            }
            "polylog" => {
                arity(2)?;
                LerchParams64::new(args[1], args[0], 1.0)?;
                Function::Polylog {
                    s: args[0],
                    z: args[1],
                }
            }
            "lerch" => {
                arity(3)?;
                Function::Lerch(LerchParams64::new(args[0], args[1], args[2])?)
            }
            "eulersum" => {
                arity(0)?;
                Function::EulerSum
            }
            other => {
                return Err(Error::Domain(format!(
                    "unknown function '{other}', expected one of: {NAMES}"
                )))
            }
        };
        Ok(f)
    }

    /// The defining series, term `k` for `k = 0, 1, ...`.
    pub fn term(&self, k: u64) -> f64 {
        match *self {
            Function::Zeta { s } => ((k + 1) as f64).powf(-s),
            Function::Hurwitz { s, v } => (k as f64 + v).powf(-s),
            Function::Polylog { s, z } => {
                z * LerchParams64::new(z, s, 1.0).expect("validated").term(k)
            }
            Function::Lerch(p) => p.term(k),
            Function::EulerSum => euler_sum_term(k),
        }
    }

    /// Whether every term is nonnegative, as condensation requires.
    pub fn nonnegative(&self) -> bool {
        match *self {
            Function::Polylog { z, .. } => z >= 0.0,
            Function::Lerch(p) => p.z() >= 0.0,
            _ => true,
        }
    }

    /// Evaluates with the library's own method selection.
    pub fn eval(&self, tol: ToleranceSpec64) -> Result<AccelResult64> {
        match *self {
            Function::Zeta { s } => riemann_zeta(s, tol),
            Function::Hurwitz { s, v } => hurwitz_zeta(s, v, tol),
            Function::Polylog { s, z } => polylog(s, z, tol),
            Function::Lerch(p) => lerch_phi(p, tol),
            Function::EulerSum => euler_harmonic_sum(tol),
        }
    }
}
