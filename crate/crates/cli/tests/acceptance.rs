//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero if any fail.

mod support;

use std::process::Command;
use std::time::{Duration, Instant};

use opineq_core::checks::{compute_sandwich, CheckId, Verdict};
use opineq_core::constants::{lemma_bounds, mn2012_gap};
use opineq_core::fuzz::{default_p_list, run, FuzzConfig};
use opineq_core::linalg::min_eigenvalue;
use opineq_core::repro::{e1_pair, reproduce, ExampleId, Quantity};

const FUZZ_SEED: u64 = 20_240_601;
const FUZZ_TRIALS: usize = 1000;
const FUZZ_TOL: f64 = 1e-8;
const FUZZ_BUDGET: Duration = Duration::from_secs(60);
const EXAMPLE_BUDGET: Duration = Duration::from_secs(1);
const SANDWICH_TOL: f64 = 1e-10;
const LEMMA_SLACK: f64 = 1e-12;
const LH_TRIALS: usize = 10_000;

const FUZZED: [CheckId; 13] = [
    CheckId::InfoMonotonicity,
    CheckId::ReverseMonotonicity,
    CheckId::AndoConverse,
    CheckId::PowerCorollary,
    CheckId::NormPowerLemma,
    CheckId::LhExtension,
    CheckId::Mn2012,
    CheckId::MondPecaric,
    CheckId::HolderMccarthy,
    CheckId::NormChain,
    CheckId::RadiusChain,
    CheckId::PowerNorm,
    CheckId::NormRefinement,
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rel_ok(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs()
}

fn example_scalars(id: ExampleId, names: &[&str]) -> (Vec<f64>, bool, Duration) {
    let t = Instant::now();
    let r = reproduce(id).expect("example evaluates");
    let values = names.iter().map(|n| r.scalar(n).expect("term present")).collect();
    (values, r.pass, t.elapsed())
}

fn criterion_1() -> Outcome {
    let (v, _, elapsed) = example_scalars(ExampleId::E1, &["new_term", "k_term", "f_term"]);
    let values = rel_ok(v[0], 5.35393, 1e-3) && rel_ok(v[1], 5.55857, 1e-3) && rel_ok(v[2], 12.6413, 1e-3);
    let order = v[0] < v[1] && v[1] < v[2];
    outcome(
        values && order && elapsed < EXAMPLE_BUDGET,
        format!("new {:.6}, K {:.6}, F {:.6}, ordered {order}, {elapsed:?}", v[0], v[1], v[2]),
    )
}

fn criterion_2() -> Outcome {
    let (v, _, elapsed) = example_scalars(ExampleId::E2, &["seo_term", "ours_term"]);
    let values = rel_ok(v[0], 0.000524, 1e-2) && rel_ok(v[1], 0.0001688, 1e-3);
    let order = v[1] < v[0];
    outcome(
        values && order && elapsed < EXAMPLE_BUDGET,
        format!("seo {:.7}, ours {:.7}, ours < seo {order}, {elapsed:?}", v[0], v[1]),
    )
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for (id, tol) in [(ExampleId::E3i, 5e-3), (ExampleId::E3ii, 5e-2), (ExampleId::E3iii, 5e-3)] {
        let r = reproduce(id).expect("example evaluates");
        let item = r.item("difference").expect("difference item");
        let (Quantity::Matrix(got), Some(Quantity::Matrix(want))) = (&item.computed, &item.expected) else {
            unreachable!("matrix item")
        };
        let dev = (got - want).max_abs();
        let lo = min_eigenvalue(got).expect("symmetric");
        let psd = lo >= -1e-9 * got.max_abs().max(1.0);
        pass &= dev <= tol && psd;
        parts.push(format!("{id} max dev {dev:.1e} (tol {tol:.0e}) min eig {lo:.4}"));
    }
    let elapsed = t.elapsed();
    outcome(pass && elapsed < EXAMPLE_BUDGET, format!("{}, {elapsed:?}", parts.join("; ")))
}

fn criterion_4() -> Outcome {
    let (a, b) = e1_pair();
    let s = compute_sandwich(&a, &b).expect("positive definite pair");
    let pass = (s.lambda_min - 1.0).abs() <= SANDWICH_TOL && (s.lambda_max - 2.0).abs() <= SANDWICH_TOL;
    outcome(pass, format!("({:.12}, {:.12})", s.lambda_min, s.lambda_max))
}

fn criterion_5() -> Outcome {
    let mut total = Duration::ZERO;
    let mut failing = Vec::new();
    for id in FUZZED {
        let cfg = FuzzConfig { keep_going: true, tol_rel: FUZZ_TOL, ..FuzzConfig::new(id, FUZZ_TRIALS, FUZZ_SEED) };
        let t = Instant::now();
        let res = run(&cfg);
        let elapsed = t.elapsed();
        total += elapsed;
        let line = match res {
            Ok(r) => {
                let fails = r.count(Verdict::Fails);
                let violated = r.count(Verdict::HypothesisViolated);
                let dims: std::collections::BTreeSet<usize> = r.reports.iter().map(|x| x.params.dim).collect();
                let ps = default_p_list(id);
                let covered = ps.iter().all(|p| r.reports.iter().any(|x| x.params.p == *p));
                let ok = fails == 0 && violated == 0 && r.reports.len() >= FUZZ_TRIALS && covered && dims.len() == 5;
                let failing_ps: std::collections::BTreeSet<String> = r
                    .reports
                    .iter()
                    .filter(|x| x.verdict == Verdict::Fails)
                    .map(|x| format!("{}", x.params.p))
                    .collect();
                if !ok {
                    failing.push(id.as_str());
                }
                format!(
                    "  {} {id}: {} instances, dims {:?}, {} exponents, {fails} FAILS{}, {violated} violated, {elapsed:?}",
                    if ok { "PASS" } else { "FAIL" },
                    r.reports.len(),
                    dims,
                    ps.len(),
                    if fails > 0 { format!(" at p in {{{}}}", failing_ps.into_iter().collect::<Vec<_>>().join(", ")) } else { String::new() },
                )
            }
            Err(e) => {
                failing.push(id.as_str());
                format!("  FAIL {id}: error {e}")
            }
        };
        println!("{line}");
    }
    let in_budget = total < FUZZ_BUDGET;
    let detail = if failing.is_empty() {
        format!("13 suites clean at tol_rel {FUZZ_TOL:e}, total {total:?}")
    } else {
        format!("FAILS in {}; total {total:?}", failing.join(", "))
    };
    outcome(failing.is_empty() && in_budget, detail)
}

fn criterion_6() -> Outcome {
    let ps: Vec<f64> = (0..26).map(|i| -1.0 + 3.0 * i as f64 / 25.0).filter(|p| p.abs() > 1e-12).collect();
    let ms = [0.01, 0.1, 0.25, 0.5, 1.0];
    let big_ms = [1.0, 1.5, 4.0, 60.0];
    let mut points = 0;
    let mut worst = f64::INFINITY;
    for &p in &ps {
        for &m in &ms {
            for &big_m in &big_ms {
                for k in 0..20 {
                    let t = 1.0 + (big_m - 1.0) * k as f64 / 19.0;
                    let b = lemma_bounds(t, m, big_m, p).expect("domain");
                    let scale = 1f64.max(b.lower.abs()).max(b.mid.abs()).max(b.upper.abs());
                    worst = worst.min((b.mid - b.lower) / scale).min((b.upper - b.mid) / scale);
                    points += 1;
                }
            }
        }
    }
    let mut worst_gap = f64::INFINITY;
    let mut gap_points = 0;
    for i in 0..100 {
        let s = 1.0 + 99.0 * i as f64 / 99.0;
        for j in 0..=100 {
            let p = j as f64 / 100.0;
            worst_gap = worst_gap.min(mn2012_gap(s, p).expect("domain"));
            gap_points += 1;
        }
    }
    let pass = points >= 10_000 && worst >= -LEMMA_SLACK && worst_gap >= -LEMMA_SLACK;
    outcome(
        pass,
        format!("{points} lemma points, worst scaled margin {worst:.2e}; {gap_points} gap points, min {worst_gap:.2e}"),
    )
}

fn criterion_7() -> Outcome {
    let cfg = FuzzConfig { p_list: Some(vec![2.0]), ..FuzzConfig::new(CheckId::LownerHeinz, LH_TRIALS, FUZZ_SEED) };
    let r = run(&cfg).expect("fuzz runs");
    match r.witness {
        Some(w) => {
            let a = &w.instance.a;
            let b = w.instance.b.as_ref().expect("pair");
            let ordered = min_eigenvalue(&(b - a)).expect("symmetric") >= -1e-9 * b.max_abs();
            let pass = w.report.hypotheses_ok && ordered && (w.trial as usize) < LH_TRIALS;
            outcome(
                pass,
                format!("A <= B, A^2 not <= B^2 at trial {} (dim {}, gap {:.3e})", w.trial, a.dim(), w.report.gap_min_eig.unwrap_or(f64::NAN)),
            )
        }
        None => outcome(false, format!("no counterexample in {LH_TRIALS} trials")),
    }
}

fn criterion_8() -> Outcome {
    match support::diagonal::run() {
        Ok(n) => outcome(true, format!("{n} comparisons over {} diagonal instances per check", support::diagonal::INSTANCES)),
        Err(e) => outcome(false, e),
    }
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let bin = env!("CARGO_BIN_EXE_opineq");
    let fuzz = |name: &str, extra: &[&str]| -> Vec<u8> {
        let path = dir.path().join(name);
        let status = Command::new(bin)
            .args(["fuzz", "--check", "ando_converse", "--trials", "400", "--dim", "2-6", "--seed", "77", "--json"])
            .arg(&path)
            .args(extra)
            .output()
            .expect("binary runs")
            .status;
        assert!(status.success(), "fuzz exit {status}");
        std::fs::read(path).expect("report written")
    };
    let first = fuzz("a.json", &[]);
    let second = fuzz("b.json", &[]);
    let serial = fuzz("c.json", &["--serial"]);
    let pass = !first.is_empty() && first == second && first == serial;
    outcome(pass, format!("{} bytes, parallel reruns identical {}, serial identical {}", first.len(), first == second, first == serial))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("E1 bound terms", criterion_1),
        ("E2 bound terms", criterion_2),
        ("E3 difference matrices", criterion_3),
        ("E1 sandwich spectrum", criterion_4),
        ("fuzz suites", criterion_5),
        ("scalar lemma grid", criterion_6),
        ("power monotonicity counterexample at p = 2", criterion_7),
        ("diagonal scalar oracle", criterion_8),
        ("fuzz determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!("criterion {} [{}] {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
