//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use cnct_core::condense::CondensedSeries;
use cnct_core::functions::euler_sum_term;
use cnct_core::{
    cnct_sum, delta_estimate, direct_sum, euler_harmonic_sum, lerch_phi, DeltaAccelerator64,
    EpsilonTable64, LerchDistribution64, LerchParams64, Method, RealSequence64, ToleranceSpec64,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};
use std::process::Command;
use std::time::{Duration, Instant};

const TABLE_1: [f64; 13] = [
    0.133331333415539,
    0.120474532168000,
    0.120176326936846,
    0.120204748497388,
    0.120204079128106,
    0.120204045387208,
    0.120204045378284,
    0.120204045434802,
    0.120204045438553,
    0.120204045438726,
    0.120204045438733,
    0.120204045438733,
    0.120204045438733,
];
const EULER_SUM: f64 = 4.599873743272337314;
const PHI_POS: f64 = 1.644825385246778980;
const PHI_NEG: f64 = 0.8224683266259164962;
const ZETA_2: f64 = 1.644934066848226436;
const CASES: u32 = 1000;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(checks: Vec<(bool, String)>) -> Verdict {
    Verdict {
        pass: checks.iter().all(|c| c.0),
        detail: checks
            .into_iter()
            .map(|(ok, d)| format!("{}{d}", if ok { "" } else { "FAILED " }))
            .collect::<Vec<_>>()
            .join("; "),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn ulps(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / (f64::EPSILON * b.abs())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.3} s", d.as_secs_f64())
}

fn table_1() -> Verdict {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_cnct"))
        .args([
            "table", "polylog", "3", "0.99999", "--scale", "0.1", "--orders", "12", "--format",
            "csv",
        ])
        .output()
        .expect("run cnct");
    let elapsed = start.elapsed();
    let text = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<f64> = text
        .lines()
        .skip(1)
        .filter_map(|l| l.split(',').nth(1)?.parse().ok())
        .collect();
    let mut worst_early = 0f64;
    let mut worst_late = 0f64;
    for (n, (&got, want)) in rows.iter().zip(TABLE_1).enumerate() {
        if n < 8 {
            worst_early = worst_early.max(rel(got, want));
        } else {
            worst_late = worst_late.max(rel(got, want));
        }
    }
    verdict(vec![
        (
            out.status.success() && rows.len() == 13,
            format!("{} rows", rows.len()),
        ),
        (
            worst_early <= 5e-13,
            format!("rows 0-7 max rel {worst_early:.1e} (<= 5e-13)"),
        ),
        (
            worst_late <= 1e-14,
            format!("rows 8-12 max rel {worst_late:.1e} (<= 1e-14)"),
        ),
        (
            rows.last()
                .is_some_and(|&v| (v - 0.120204045438733).abs() < 5e-16),
            format!("final {:.15}", rows.last().copied().unwrap_or(f64::NAN)),
        ),
        (
            elapsed < Duration::from_secs(1),
            format!("runtime {}", secs(elapsed)),
        ),
    ])
}

fn zeta_2() -> Verdict {
    let start = Instant::now();
    let basel = |k: u64| ((k + 1) as f64).powi(-2);
    let mut checks = Vec::new();
    for n in [10_000u64, 100_000, 1_000_000] {
        let r = direct_sum(basel, ToleranceSpec64::default().with_max_terms(n)).unwrap();
        let err = (ZETA_2 - r.value).abs();
        let target = 1.0 / n as f64;
        checks.push((
            err >= target / 2.0 && err <= target * 2.0,
            format!("direct {n}: err {err:.2e}"),
        ));
    }
    let c = cnct_sum(basel, ToleranceSpec64::default()).unwrap();
    let elapsed = start.elapsed();
    checks.push((
        c.converged && rel(c.value, ZETA_2) <= 1e-14,
        format!("cnct rel {:.1e}", rel(c.value, ZETA_2)),
    ));
    checks.push((
        c.terms_used <= 3000 && c.order <= 25,
        format!("cnct {} terms, order {}", c.terms_used, c.order),
    ));
    checks.push((
        elapsed < Duration::from_secs(1),
        format!("runtime {}", secs(elapsed)),
    ));
    verdict(checks)
}

fn euler_sum() -> Verdict {
    let start = Instant::now();
    let r = euler_harmonic_sum(ToleranceSpec64::default().with_rel_tol(1e-12)).unwrap();
    let d = direct_sum(
        euler_sum_term::<f64>,
        ToleranceSpec64::default().with_max_terms(500_000),
    )
    .unwrap();
    let elapsed = start.elapsed();
    let digits = -rel(d.value, EULER_SUM).log10();
    verdict(vec![
        (
            r.converged && rel(r.value, EULER_SUM) <= 1e-12,
            format!("cnct rel {:.1e}", rel(r.value, EULER_SUM)),
        ),
        (r.terms_used <= 10_000, format!("{} terms", r.terms_used)),
        (
            (digits - 5.0).abs() <= 0.5,
            format!("direct 500000 terms: {digits:.2} correct digits (want ~5)"),
        ),
        (
            elapsed < Duration::from_secs(2),
            format!("runtime {}", secs(elapsed)),
        ),
    ])
}

fn lerch_dispatch() -> Verdict {
    let tol = ToleranceSpec64::default().with_rel_tol(1e-12);
    let mut checks = Vec::new();
    for (z, want, method) in [
        (0.99999, PHI_POS, Method::Cnct),
        (-0.99999, PHI_NEG, Method::DeltaDirect),
    ] {
        let r = lerch_phi(LerchParams64::new(z, 2.0, 1.0).unwrap(), tol).unwrap();
        checks.push((
            r.converged
                && r.method == method
                && rel(r.value, want) <= 1e-11
                && r.terms_used <= 5000,
            format!(
                "z={z}: {} rel {:.1e}, {} terms",
                r.method,
                rel(r.value, want),
                r.terms_used
            ),
        ));
    }
    verdict(checks)
}

fn runner() -> TestRunner {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

/// Runs a randomized property; `Err` carries the shrunk counterexample.
fn property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> (bool, String)
where
    S::Value: std::fmt::Debug,
{
    match runner().run(&strategy, test) {
        Ok(()) => (true, format!("{name} ({CASES} cases)")),
        Err(TestError::Fail(reason, value)) => {
            (false, format!("{name}: {} at {value:?}", reason.message()))
        }
        Err(e) => (false, format!("{name}: {e}")),
    }
}

/// Partial sums of terms drawn from [-1, 1].
fn random_sums() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 3..16).prop_map(|t| {
        let mut acc = 0.0;
        t.into_iter()
            .map(|x| {
                acc += x;
                acc
            })
            .collect()
    })
}

fn seq(v: &[f64]) -> RealSequence64 {
    RealSequence64::new(v.to_vec()).unwrap()
}

fn scaling_covariance() -> (bool, String) {
    let c =
        (-3.0f64..3.0, any::<bool>())
            .prop_map(|(e, neg)| if neg { -(10f64.powf(e)) } else { 10f64.powf(e) });
    property(
        "delta scaling covariance <= 4 ulp",
        (random_sums(), c),
        |(s, c)| {
            let Ok(base) = delta_estimate(&seq(&s), 1.0) else {
                return Ok(());
            };
            let scaled: Vec<f64> = s.iter().map(|x| c * x).collect();
            let got = delta_estimate(&seq(&scaled), 1.0)
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert!(ulps(got, c * base) <= 4.0, "{} ulp", ulps(got, c * base));
            Ok(())
        },
    )
}

fn translation_covariance() -> (bool, String) {
    property(
        "delta translation covariance <= 1e-13 rel",
        (random_sums(), -10.0f64..10.0),
        |(s, d)| {
            let Ok(base) = delta_estimate(&seq(&s), 1.0) else {
                return Ok(());
            };
            let shifted: Vec<f64> = s.iter().map(|x| x + d).collect();
            let got = delta_estimate(&seq(&shifted), 1.0)
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert!(rel(got, base + d) <= 1e-13, "rel {:e}", rel(got, base + d));
            Ok(())
        },
    )
}

fn geometric_exactness() -> (bool, String) {
    property(
        "geometric exactness <= 8 ulp",
        (-0.999f64..0.999, 3usize..24),
        |(z, n)| {
            if z == 0.0 {
                return Ok(());
            }
            let mut sums = Vec::with_capacity(n);
            let (mut acc, mut p) = (0.0, 1.0);
            for _ in 0..n {
                acc += p;
                p *= z;
                sums.push(acc);
            }
            let limit = 1.0 / (1.0 - z);
            let mut delta = DeltaAccelerator64::new();
            for (i, &x) in sums.iter().enumerate() {
                let e = delta
                    .push(x)
                    .map_err(|e| TestCaseError::fail(e.to_string()))?;
                if let (Some(e), true) = (e, i >= 2) {
                    prop_assert!(
                        ulps(e, limit) <= 8.0,
                        "delta order {}: {} ulp",
                        i - 1,
                        ulps(e, limit)
                    );
                }
            }
            let table = EpsilonTable64::build(&seq(&sums)).unwrap();
            for (m, e) in table.even_diagonal().into_iter().enumerate().skip(1) {
                prop_assert!(
                    ulps(e, limit) <= 8.0,
                    "epsilon column {}: {} ulp",
                    2 * m,
                    ulps(e, limit)
                );
            }
            Ok(())
        },
    )
}

fn condensation_closed_form() -> (bool, String) {
    let mut worst = 0f64;
    for s in [2.0f64, 3.0, 4.0] {
        let mut c = CondensedSeries::new(move |k: u64| ((k + 1) as f64).powf(-s), 1e-16).unwrap();
        for j in 0..=30u64 {
            let want = ((j + 1) as f64).powf(-s) / (1.0 - 2f64.powf(1.0 - s));
            worst = worst.max(rel(c.condensed_term(j).unwrap(), want));
        }
    }
    (
        worst <= 1e-13,
        format!("condensation closed form, 93 points, max rel {worst:.1e}"),
    )
}

fn lerch_grid() -> (bool, String) {
    let tol = ToleranceSpec64::default();
    let phi = |z, s, v| {
        lerch_phi(LerchParams64::new(z, s, v).unwrap(), tol)
            .unwrap()
            .value
    };
    let mut worst = 0f64;
    for z in [-0.9, -0.5, 0.3, 0.9, 0.99] {
        for s in [1.5, 2.0, 3.0] {
            for v in [0.5f64, 1.0, 2.0] {
                let lhs = phi(z, s, v) - z * phi(z, s, v + 1.0);
                worst = worst.max(rel(lhs, v.powf(-s)));
            }
        }
    }
    (
        worst <= 1e-12,
        format!("Lerch contiguous identity, 45 points, max rel {worst:.1e}"),
    )
}

fn distribution_properties() -> Vec<(bool, String)> {
    let tol = ToleranceSpec64::default();
    let dist = move |z: f64, s: f64, v: f64| {
        LerchDistribution64::new(LerchParams64::new(z, s, v).unwrap(), tol).unwrap()
    };
    let light = (0.05f64..0.95, 0.0f64..4.0, 0.2f64..5.0);
    let any_family = prop_oneof![
        (0.05f64..0.99, 0.0f64..4.0, 0.2f64..5.0),
        (Just(1.0), 1.5f64..4.0, 0.2f64..5.0),
    ];
    vec![
        property("normalization", light, move |(z, s, v)| {
            let d = dist(z, s, v);
            let k = (-40.0 / z.log10()).ceil() as u64;
            prop_assert!(
                (d.cdf(k) - 1.0).abs() <= d.norm_err() + 1e-12,
                "cdf {}",
                d.cdf(k)
            );
            Ok(())
        }),
        property(
            "monotone cdf",
            (any_family.clone(), 0u64..200),
            move |((z, s, v), k)| {
                let d = dist(z, s, v);
                prop_assert!(d.cdf(k + 1) >= d.cdf(k));
                Ok(())
            },
        ),
        property(
            "quantile Galois",
            (any_family, 0.0f64..0.99),
            move |((z, s, v), p)| {
                let d = dist(z, s, v);
                let q = d
                    .quantile(p)
                    .map_err(|e| TestCaseError::fail(e.to_string()))?;
                prop_assert!(d.cdf(q) >= p);
                prop_assert!(q == 0 || d.cdf(q - 1) < p);
                Ok(())
            },
        ),
    ]
}

fn online_offline() -> (bool, String) {
    property("online/offline delta <= 4 ulp", random_sums(), |s| {
        let mut acc = DeltaAccelerator64::new();
        for (n, &x) in s.iter().enumerate() {
            let online = acc.push(x);
            if n == 0 {
                continue;
            }
            match (online, delta_estimate(&seq(&s[..=n]), 1.0)) {
                (Ok(Some(a)), Ok(b)) => prop_assert!(ulps(a, b) <= 4.0),
                (Err(a), Err(b)) => prop_assert_eq!(a, b),
                (a, b) => prop_assert!(false, "{a:?} vs {b:?}"),
            }
        }
        Ok(())
    })
}

fn property_suites() -> Verdict {
    let mut checks = vec![
        scaling_covariance(),
        translation_covariance(),
        geometric_exactness(),
        condensation_closed_form(),
        lerch_grid(),
    ];
    checks.extend(distribution_properties());
    checks.push(online_offline());
    verdict(checks)
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 5] = [
        ("Table 1 reproduction", table_1),
        ("zeta(2) direct vs condensed", zeta_2),
        ("Euler harmonic sum", euler_sum),
        ("Lerch dispatch near z = +-1", lerch_dispatch),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} - {name}: {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!(
        "criterion 6: N/A - Bethe logarithm and QED results depend on external inputs; not checked"
    );
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
