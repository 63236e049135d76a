//! Text, CSV and JSON renderings of results.

use clap::ValueEnum;
use cnct_core::{AccelResult64, TableRow64};
use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Significant digits of every printed real.
pub const DIGITS: usize = 17;

/// `x` with 17 significant digits; positional unless the exponent is below -5
/// or at least 17.
pub fn real(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return format!("{:.*}", DIGITS - 1, 0.0);
    }
    let sci = format!("{:.*e}", DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..DIGITS as i32).contains(&exp) {
        return sci;
    }
    let (sign, mantissa) = mantissa
        .strip_prefix('-')
        .map_or(("", mantissa), |m| ("-", m));
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let out = if exp < 0 {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    } else {
        let point = exp as usize + 1;
        if point >= digits.len() {
            format!("{digits}.0")
        } else {
            format!("{}.{}", &digits[..point], &digits[point..])
        }
    };
    format!("{sign}{out}")
}

/// JSON number: like [`real`], with `null` for non-finite values.
fn json_real(x: f64) -> String {
    if x.is_finite() {
        real(x)
    } else {
        "null".into()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Real(f64),
    Index(u64),
}

impl Value {
    fn text(self) -> String {
        match self {
            Value::Real(x) => real(x),
            Value::Index(k) => k.to_string(),
        }
    }

    fn json(self) -> String {
        match self {
            Value::Real(x) => json_real(x),
            Value::Index(k) => k.to_string(),
        }
    }
}

/// One result as printed.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub value: Value,
    pub error_estimate: f64,
    pub order: i64,
    pub terms_used: u64,
    pub converged: bool,
    pub method: String,
}

impl From<&AccelResult64> for Record {
    fn from(r: &AccelResult64) -> Self {
        Self {
            value: Value::Real(r.value),
            error_estimate: r.error_estimate,
            order: r.order,
            terms_used: r.terms_used,
            converged: r.converged,
            method: r.method.to_string(),
        }
    }
}

pub const CSV_HEADER: &str = "value,error_estimate,order,terms_used,converged,method";

impl Record {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let rows = [
            ("value", self.value.text()),
            ("error_estimate", real(self.error_estimate)),
            ("order", self.order.to_string()),
            ("terms_used", self.terms_used.to_string()),
            ("converged", self.converged.to_string()),
            ("method", self.method.clone()),
        ];
        for (k, v) in rows {
            writeln!(s, "{k:<16}{v}").unwrap();
        }
        s
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.value.text(),
            real(self.error_estimate),
            self.order,
            self.terms_used,
            self.converged,
            self.method
        )
    }

    pub fn json(&self) -> String {
        format!(
            "{{\"value\":{},\"error_estimate\":{},\"order\":{},\"terms_used\":{},\"converged\":{},\"method\":\"{}\"}}",
            self.value.json(),
            json_real(self.error_estimate),
            self.order,
            self.terms_used,
            self.converged,
            self.method
        )
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Csv => format!("{CSV_HEADER}\n{}\n", self.csv_row()),
            Format::Json => format!("{}\n", self.json()),
        }
    }
}

/// Accelerated and direct results side by side.
pub fn comparison(accel: &Record, direct: &Record, format: Format) -> String {
    let ratio = direct.terms_used as f64 / accel.terms_used.max(1) as f64;
    match format {
        Format::Text => {
            let mut s = format!(
                "[{}]\n{}\n[direct]\n{}\n",
                accel.method,
                accel.text(),
                direct.text()
            );
            writeln!(s, "{:<16}{}", "terms_ratio", real(ratio)).unwrap();
            s
        }
        Format::Csv => format!("{CSV_HEADER}\n{}\n{}\n", accel.csv_row(), direct.csv_row()),
        Format::Json => format!(
            "{{\"accelerated\":{},\"direct\":{},\"terms_ratio\":{}}}\n",
            accel.json(),
            direct.json(),
            json_real(ratio)
        ),
    }
}

/// Groups the fractional digits of a positional number in threes.
fn grouped(x: f64) -> String {
    let s = real(x);
    let Some((int, frac)) = s.split_once('.') else {
        return s;
    };
    if frac.contains('e') {
        return s;
    }
    let chunks: Vec<String> = frac
        .as_bytes()
        .chunks(3)
        .map(|c| String::from_utf8_lossy(c).into_owned())
        .collect();
    format!("{int}.{}", chunks.join(" "))
}

/// Leading significant digits shared by `a` and `b`.
pub fn agreeing_digits(a: f64, b: f64) -> u32 {
    if a == b {
        return DIGITS as u32;
    }
    let scale = a.abs().max(b.abs());
    let r = (a - b).abs() / scale;
    if !(r > 0.0) || !r.is_finite() {
        return 0;
    }
    (-r.log10()).floor().clamp(0.0, DIGITS as f64) as u32
}

pub fn table(rows: &[TableRow64], format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Text => {
            writeln!(
                s,
                "{:>4}  {:<26}  {:>10}  {:>6}",
                "n", "delta", "terms_used", "digits"
            )
            .unwrap();
            for (i, r) in rows.iter().enumerate() {
                let digits = match i.checked_sub(1) {
                    Some(p) => agreeing_digits(r.estimate, rows[p].estimate).to_string(),
                    None => "-".into(),
                };
                writeln!(
                    s,
                    "{:>4}  {:<26}  {:>10}  {:>6}",
                    r.order,
                    grouped(r.estimate),
                    r.terms_used,
                    digits
                )
                .unwrap();
            }
        }
        Format::Csv => {
            s.push_str("n,delta,terms_used\n");
            for r in rows {
                writeln!(s, "{},{},{}", r.order, real(r.estimate), r.terms_used).unwrap();
            }
        }
        Format::Json => {
            let items: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "{{\"n\":{},\"delta\":{},\"terms_used\":{}}}",
                        r.order,
                        json_real(r.estimate),
                        r.terms_used
                    )
                })
                .collect();
            writeln!(s, "[{}]", items.join(",")).unwrap();
        }
    }
    s
}
