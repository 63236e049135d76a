mod format;
mod series;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cnct_core::{
    cnct_sum, cnct_table, delta_sum, direct_sum, DeltaAccelerator64, EpsilonTable64, Error,
    LerchDistribution64, LerchParams64, RealSequence64, Scaled, ToleranceSpec64,
};
use format::{Format, Record, Value};
use series::Function;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "cnct",
    version,
    about = "Sum slowly convergent series by condensation and the delta transformation",
    after_help = "Functions: zeta S | hurwitz S V | polylog S Z | lerch Z S V | eulersum\n\n\
                  Exit status: 0 converged, 1 not converged or breakdown (record still printed),\n\
                  2 usage, parse or domain error (nothing printed on stdout)."
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Opts {
    /// Relative tolerance.
    #[arg(long, global = true, default_value = "1e-14")]
    tol: f64,
    /// Highest transformation order.
    #[arg(long, global = true, default_value_t = 50)]
    max_order: usize,
    /// Term evaluation budget.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    max_terms: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Multiply every series term (or input sum) by this positive constant.
    #[arg(long, global = true, default_value_t = 1.0)]
    scale: f64,
}

#[derive(Args, Debug)]
struct FunctionArgs {
    /// zeta, hurwitz, polylog, lerch or eulersum.
    function: String,
    /// Real arguments of the function.
    #[arg(allow_negative_numbers = true)]
    args: Vec<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a built-in function.
    Eval(FunctionArgs),
    /// Diagonal delta estimates of the condensed series, order by order.
    Table {
        #[command(flatten)]
        f: FunctionArgs,
        /// Highest order to print.
        #[arg(long, default_value_t = 12)]
        orders: usize,
    },
    /// Accelerated summation next to term-by-term summation.
    Compare(FunctionArgs),
    /// Query a Lerch distribution P(X = k) ∝ z^k (k+v)^(-s), k = 0, 1, 2, ...
    ///
    /// Zipf's law over ranks 1, 2, ... is z = 1, v = 1 with rank = k + 1.
    #[command(subcommand)]
    Dist(DistQuery),
    /// Accelerate user-supplied partial sums, whitespace separated.
    Accel {
        /// Input file; standard input when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Kernel::Delta)]
        method: Kernel,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct DistParams {
    #[arg(long, allow_negative_numbers = true)]
    z: f64,
    #[arg(long, allow_negative_numbers = true)]
    s: f64,
    #[arg(long)]
    v: f64,
}

#[derive(Subcommand, Debug)]
enum DistQuery {
    /// P(X = k).
    Pmf {
        #[command(flatten)]
        params: DistParams,
        #[arg(long)]
        k: u64,
    },
    /// P(X ≤ k).
    Cdf {
        #[command(flatten)]
        params: DistParams,
        #[arg(long)]
        k: u64,
    },
    /// Smallest k with P(X ≤ k) ≥ p.
    Quantile {
        #[command(flatten)]
        params: DistParams,
        #[arg(long)]
        p: f64,
    },
    /// E[X^r].
    Moment {
        #[command(flatten)]
        params: DistParams,
        #[arg(long)]
        r: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kernel {
    Delta,
    Epsilon,
}

/// What to print and how to exit.
struct Outcome {
    output: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.output);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn tolerance(o: &Opts) -> Result<ToleranceSpec64, Error> {
    let t = ToleranceSpec64::default()
        .with_rel_tol(o.tol)
        .with_max_order(o.max_order)
        .with_max_terms(o.max_terms);
    t.validate()?;
    if !(o.scale > 0.0 && o.scale.is_finite()) {
        return Err(Error::Domain(format!(
            "--scale must be positive and finite, got {}",
            o.scale
        )));
    }
    Ok(t)
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    let o = &cli.opts;
    let tol = tolerance(o).map_err(|e| e.to_string())?;
    let parse = |f: &FunctionArgs| Function::parse(&f.function, &f.args).map_err(|e| e.to_string());
    match &cli.command {
        Command::Eval(f) => {
            let func = parse(f)?;
            let r = func.eval(tol).map_err(|e| e.to_string())?.scaled(o.scale);
            let rec = Record::from(&r);
            Ok(Outcome {
                output: rec.render(o.format),
                ok: rec.converged,
            })
        }
        Command::Table { f, orders } => {
            let func = parse(f)?;
            if !func.nonnegative() {
                return Err("table condenses the series and needs nonnegative terms".into());
            }
            let oracle = Scaled {
                inner: move |k| func.term(k),
                factor: o.scale,
            };
            let t = cnct_table(oracle, *orders, tol).map_err(|e| e.to_string())?;
            if let Some(e) = &t.truncated {
                eprintln!("table stopped after {} row(s): {e}", t.rows.len());
            }
            Ok(Outcome {
                output: format::table(&t.rows, o.format),
                ok: t.truncated.is_none(),
            })
        }
        Command::Compare(f) => {
            let func = parse(f)?;
            let oracle = Scaled {
                inner: move |k| func.term(k),
                factor: o.scale,
            };
            let accel = if func.nonnegative() {
                cnct_sum(oracle, tol)
            } else {
                delta_sum(oracle, tol)
            }
            .map_err(|e| e.to_string())?;
            let direct = direct_sum(oracle, tol).map_err(|e| e.to_string())?;
            let (a, d) = (Record::from(&accel), Record::from(&direct));
            Ok(Outcome {
                output: format::comparison(&a, &d, o.format),
                ok: a.converged,
            })
        }
        Command::Dist(q) => dist(q, tol, o.format).map_err(|e| e.to_string()),
        Command::Accel { input, method } => accel(input.as_deref(), *method, o),
    }
}

fn dist(q: &DistQuery, tol: ToleranceSpec64, fmt: Format) -> Result<Outcome, Error> {
    let params = match q {
        DistQuery::Pmf { params, .. }
        | DistQuery::Cdf { params, .. }
        | DistQuery::Quantile { params, .. }
        | DistQuery::Moment { params, .. } => *params,
    };
    let d = LerchDistribution64::new(LerchParams64::new(params.z, params.s, params.v)?, tol)?;
    let norm = d.norm_result();
    let rel_norm = d.norm_err() / d.norm();
    let from_norm = |value: f64, extra_terms: u64| Record {
        value: Value::Real(value),
        error_estimate: value * rel_norm,
        order: norm.order,
        terms_used: norm.terms_used + extra_terms,
        converged: norm.converged,
        method: norm.method.to_string(),
    };
    let rec = match *q {
        DistQuery::Pmf { k, .. } => from_norm(d.pmf(k), 1),
        DistQuery::Cdf { k, .. } => from_norm(d.cdf(k), k.saturating_add(1)),
        DistQuery::Quantile { p, .. } => {
            let k = d.quantile(p)?;
            Record {
                value: Value::Index(k),
                error_estimate: 0.0,
                ..from_norm(0.0, k + 1)
            }
        }
        DistQuery::Moment { r, .. } => Record::from(&d.moment(r)?),
    };
    Ok(Outcome {
        output: rec.render(fmt),
        ok: rec.converged,
    })
}

fn read_sums(input: Option<&std::path::Path>) -> Result<Vec<f64>, String> {
    let text = match input {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| format!("stdin: {e}"))?;
            s
        }
    };
    let mut sums = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for tok in line.split_whitespace() {
            match tok.parse::<f64>() {
                Ok(x) if x.is_finite() => sums.push(x),
                _ => {
                    return Err(format!(
                        "line {}: cannot parse '{tok}' as a finite number",
                        i + 1
                    ))
                }
            }
        }
    }
    if sums.len() < 3 {
        return Err(format!("need at least 3 partial sums, got {}", sums.len()));
    }
    Ok(sums)
}

fn accel(input: Option<&std::path::Path>, kernel: Kernel, o: &Opts) -> Result<Outcome, String> {
    let sums: Vec<f64> = read_sums(input)?.into_iter().map(|x| x * o.scale).collect();
    let n = sums.len() as u64;
    let rec = match kernel {
        Kernel::Delta => {
            let mut acc = DeltaAccelerator64::new();
            let mut broke = false;
            let mut order = -1;
            for &x in &sums {
                match acc.push(x) {
                    Ok(Some(_)) => order = acc.order().map_or(-1, |k| k as i64),
                    Ok(None) => {}
                    Err(Error::Breakdown { .. } | Error::InteriorZeroDifference { .. }) => {
                        broke = true;
                        break;
                    }
                    Err(e) => return Err(e.to_string()),
                }
            }
            let value = acc.estimate().unwrap_or(f64::NAN);
            let err = acc
                .previous_estimate()
                .map_or(f64::INFINITY, |p| (value - p).abs());
            if broke {
                eprintln!("delta transformation broke down; reporting the last stable estimate");
            }
            Record {
                value: Value::Real(value),
                error_estimate: err,
                order,
                terms_used: n,
                converged: !broke,
                method: "delta".into(),
            }
        }
        Kernel::Epsilon => {
            let seq = RealSequence64::new(sums).map_err(|e| e.to_string())?;
            let t = EpsilonTable64::build(&seq).map_err(|e| e.to_string())?;
            let diag = t.even_diagonal();
            let err = match diag.as_slice() {
                [.., a, b] => (b - a).abs(),
                _ => f64::INFINITY,
            };
            Record {
                value: Value::Real(t.estimate()),
                error_estimate: err,
                order: t.max_even_column() as i64,
                terms_used: n,
                converged: true,
                method: "epsilon".into(),
            }
        }
    };
    Ok(Outcome {
        output: rec.render(o.format),
        ok: rec.converged,
    })
}
