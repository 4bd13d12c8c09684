//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `cargo test -p cu-kit --test acceptance -- --nocapture` to see
//! them). Every criterion is deterministic in its pinned seed and returns a
//! JSON summary; the final criterion re-runs everything and demands
//! byte-identical reports.

use std::sync::OnceLock;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use cu_kit::json::law_reports_json;
use cu_kit::oracle::oracle_selftest;
use cu_kit_core::bratteli::{
    af_compare, compact_interpolation_check, compacts_below, fibonacci,
    order_equals_inclusion_check, perron_trace, two_block, uhf2, uhf6, TraceValue,
};
use cu_kit_core::controls::{SkewedAdd, SkewedAddSampler, WayBelowAsLeq};
use cu_kit_core::extnat::ExtNat;
use cu_kit_core::instance::{ExtNatCu, ExtRationalCu};
use cu_kit_core::laws::{check_laws, check_morphism, LawReport};
use cu_kit_core::limit::{
    limit_sup, rapid_rep_checks, rapid_representative, thread_equiv, thread_leq,
    universal_property_check, CuDiagram, Thread, ThreadSeq, Tri,
};
use cu_kit_core::matrix_map::{map_from, MatrixCuMap};
use cu_kit_core::rational::ExtRational;
use cu_kit_core::samplers::{NatSampler, RationalSampler, VectorSampler};
use cu_kit_core::vector::{ExtNatVector, VectorCu};

const HORIZON: u32 = 40;

fn verdict(n: u32, label: &str, ok: bool) {
    println!("ACCEPTANCE {n} {label}: {}", if ok { "PASS" } else { "FAIL" });
}

/// First-run results, shared between the per-criterion tests and the
/// determinism re-run.
fn cached(idx: usize) -> &'static (bool, Value) {
    static CACHE: [OnceLock<(bool, Value)>; 8] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    let runs: [fn() -> (bool, Value); 8] = [
        criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7,
        criterion8,
    ];
    CACHE[idx].get_or_init(runs[idx])
}

fn reports_pass(reports: &[LawReport]) -> bool {
    reports.iter().all(|r| r.failures == 0 && r.cases > 0)
}

fn reports_json(reports: &[LawReport]) -> Value {
    serde_json::to_value(law_reports_json(reports)).unwrap()
}

// ---------------------------------------------------------------------------
// Sampling helpers (all seeded)
// ---------------------------------------------------------------------------

fn sample_seed(rng: &mut ChaCha8Rng, dim: usize, inf_pct: u32) -> ExtNatVector {
    ExtNatVector::new(
        (0..dim)
            .map(|_| {
                if rng.gen_range(0..100) < inf_pct {
                    ExtNat::Inf
                } else {
                    ExtNat::Fin(rng.gen_range(0..=20u32) as u128)
                }
            })
            .collect(),
    )
}

fn sample_thread(rng: &mut ChaCha8Rng, d: &CuDiagram, inf_pct: u32) -> Thread {
    let start = rng.gen_range(1..=4u32);
    let start = d.cap_stage(start);
    let seed = sample_seed(rng, d.stage_dim(start).unwrap(), inf_pct);
    Thread::image(d, start, seed).unwrap()
}

fn fixture_diagrams() -> Vec<(&'static str, CuDiagram)> {
    vec![
        ("uhf2", uhf2().to_cu_diagram()),
        ("uhf6", uhf6().to_cu_diagram()),
        ("fibonacci", fibonacci().to_cu_diagram()),
        ("two-block", two_block().to_cu_diagram()),
    ]
}

// ---------------------------------------------------------------------------
// Criterion 1: the law suite
// ---------------------------------------------------------------------------

fn criterion1() -> (bool, Value) {
    let cases = 1000;
    let seed = 7;
    let mut ok = true;
    let mut parts = Vec::new();

    let suites: Vec<(&str, Vec<LawReport>)> = vec![
        ("extnat", check_laws(&ExtNatCu, &NatSampler, cases, seed)),
        ("extnat^2", check_laws(&VectorCu::new(2), &VectorSampler::new(2), cases, seed)),
        ("extnat^4", check_laws(&VectorCu::new(4), &VectorSampler::new(4), cases, seed)),
        ("extrational", check_laws(&ExtRationalCu, &RationalSampler, cases, seed)),
    ];
    for (name, reports) in &suites {
        if !reports_pass(reports) {
            ok = false;
        }
        parts.push(json!({"instance": name, "laws": reports_json(reports)}));
    }

    // Negative controls: each must fail exactly its intended law.
    let control1 = check_laws(&WayBelowAsLeq, &NatSampler, cases, seed);
    let c1_ok = control1.iter().all(|r| {
        if r.law == "L3-basis-rapid" { r.failures > 0 } else { r.failures == 0 }
    });
    let control2 = check_laws(&SkewedAdd, &SkewedAddSampler::default(), cases, seed);
    let c2_ok = control2.iter().all(|r| {
        if r.law == "L1-ordered-semigroup" { r.failures > 0 } else { r.failures == 0 }
    });
    ok &= c1_ok && c2_ok;
    parts.push(json!({"instance": "control-wb-as-leq", "laws": reports_json(&control1), "intended": c1_ok}));
    parts.push(json!({"instance": "control-skewed-add", "laws": reports_json(&control2), "intended": c2_ok}));

    (ok, json!({"criterion": 1, "suites": parts}))
}

// ---------------------------------------------------------------------------
// Criterion 2: morphism laws for random matrices
// ---------------------------------------------------------------------------

fn criterion2() -> (bool, Value) {
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let mut failures = 0u32;
    let mut first: Option<String> = None;
    for i in 0..500u32 {
        let out_dim = rng.gen_range(1..=4usize);
        let in_dim = rng.gen_range(1..=4usize);
        let rows: Vec<Vec<u128>> = (0..out_dim)
            .map(|_| (0..in_dim).map(|_| rng.gen_range(0..=5u32) as u128).collect())
            .collect();
        let map = MatrixCuMap::from_rows(&rows).unwrap();
        let reports = check_morphism(&map, 40, 1000 + i as u64);
        for r in &reports {
            if r.failures > 0 {
                failures += r.failures;
                if first.is_none() {
                    first = Some(format!("{map}: {}: {:?}", r.law, r.first_counterexample));
                }
            }
        }
    }
    (failures == 0, json!({"criterion": 2, "maps": 500, "failures": failures, "first": first}))
}

// ---------------------------------------------------------------------------
// Criterion 3: the thread calculus
// ---------------------------------------------------------------------------

fn sample_seq(rng: &mut ChaCha8Rng, d: &CuDiagram) -> ThreadSeq {
    if rng.gen_bool(0.5) {
        let x = sample_thread(rng, d, 10);
        let r = sample_thread(rng, d, 10);
        let y = x.add(d, &r).unwrap();
        ThreadSeq::stabilizing(vec![x, y])
    } else {
        let start = d.cap_stage(rng.gen_range(1..=3u32));
        let dim = d.stage_dim(start).unwrap();
        let base = sample_seed(rng, dim, 0);
        let dir: Vec<u128> = (0..dim).map(|_| rng.gen_range(0..=1u32) as u128).collect();
        ThreadSeq::ramp(d, start, vec![base], vec![dir]).unwrap()
    }
}

fn criterion3() -> (bool, Value) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, d) in [("uhf2", uhf2()), ("uhf6", uhf6()), ("fibonacci", fibonacci())]
        .map(|(n, b)| (n, b.to_cu_diagram()))
    {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let mut violations = 0u32;

        // Reflexivity and transitivity on 200 constructed triples.
        for _ in 0..200 {
            let x = sample_thread(&mut rng, &d, 15);
            let r1 = sample_thread(&mut rng, &d, 15);
            let r2 = sample_thread(&mut rng, &d, 15);
            let y = x.add(&d, &r1).unwrap();
            let z = y.add(&d, &r2).unwrap();
            if thread_leq(&d, &x, &x, HORIZON) != Tri::Le {
                violations += 1;
            }
            if thread_leq(&d, &x, &y, HORIZON) == Tri::Le
                && thread_leq(&d, &y, &z, HORIZON) == Tri::Le
                && thread_leq(&d, &x, &z, HORIZON) != Tri::Le
            {
                violations += 1;
            }
        }

        // Additivity of the pre-order on 200 quadruples.
        for _ in 0..200 {
            let a = sample_thread(&mut rng, &d, 15);
            let b = sample_thread(&mut rng, &d, 15);
            let a2 = a.add(&d, &sample_thread(&mut rng, &d, 15)).unwrap();
            let b2 = b.add(&d, &sample_thread(&mut rng, &d, 15)).unwrap();
            if thread_leq(&d, &a, &a2, HORIZON) == Tri::Le
                && thread_leq(&d, &b, &b2, HORIZON) == Tri::Le
            {
                let s = a.add(&d, &b).unwrap();
                let s2 = a2.add(&d, &b2).unwrap();
                if thread_leq(&d, &s, &s2, HORIZON) != Tri::Le {
                    violations += 1;
                }
            } else {
                violations += 1;
            }
        }

        // Additivity of the supremum on 200 quadruples of sequences.
        for _ in 0..200 {
            let sa = sample_seq(&mut rng, &d);
            let sb = sample_seq(&mut rng, &d);
            let (Ok(sup_a), Ok(sup_b)) = (limit_sup(&d, &sa, HORIZON), limit_sup(&d, &sb, HORIZON))
            else {
                violations += 1;
                continue;
            };
            let Ok(sum_seq) = sa.sum(&d, &sb) else {
                violations += 1;
                continue;
            };
            let Ok(sup_sum) = limit_sup(&d, &sum_seq, HORIZON) else {
                violations += 1;
                continue;
            };
            let direct = sup_a.add(&d, &sup_b).unwrap();
            if thread_equiv(&d, &sup_sum, &direct, HORIZON) != Tri::Le {
                violations += 1;
            }
        }

        // Rapid representatives for 100 sampled threads.
        for _ in 0..100 {
            let t = sample_thread(&mut rng, &d, 20);
            let rep = rapid_representative(&d, &t, HORIZON);
            if !rapid_rep_checks(&d, &rep, &t, HORIZON, 10) {
                violations += 1;
            }
        }

        if violations > 0 {
            ok = false;
        }
        parts.push(json!({"fixture": name, "violations": violations}));
    }
    (ok, json!({"criterion": 3, "fixtures": parts}))
}

// ---------------------------------------------------------------------------
// Criterion 4: the universal property
// ---------------------------------------------------------------------------

fn uhf2_scaling(stage: u32, v: &ExtNatVector) -> ExtRational {
    match v.coord(0) {
        ExtNat::Fin(n) => ExtRational::Fin(num_rational::BigRational::new(
            num_bigint::BigInt::from(n),
            num_bigint::BigInt::from(1u8) << (stage - 1),
        )),
        ExtNat::Inf => ExtRational::Inf,
    }
}

fn criterion4() -> (bool, Value) {
    let d = uhf2().to_cu_diagram();
    let psi = |stage: u32, v: &ExtNatVector| uhf2_scaling(stage, v);
    let scaled = universal_property_check(&d, &ExtRationalCu, &psi, 100, HORIZON, 4);

    let ident = CuDiagram::from_stationary_map(map_from(&[&[1]]));
    let psi2 = |_: u32, v: &ExtNatVector| v.coord(0);
    let identity = universal_property_check(&ident, &ExtNatCu, &psi2, 100, HORIZON, 4);

    let ok = reports_pass(&scaled) && reports_pass(&identity);
    (
        ok,
        json!({
            "criterion": 4,
            "scaling-fixture": reports_json(&scaled),
            "identity-fixture": reports_json(&identity),
        }),
    )
}

// ---------------------------------------------------------------------------
// Criterion 5: order against stage-wise inclusion for compact classes
// ---------------------------------------------------------------------------

fn criterion5() -> (bool, Value) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, d) in fixture_diagrams() {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        let pairs: Vec<(Thread, Thread)> = (0..200)
            .map(|_| (sample_thread(&mut rng, &d, 0), sample_thread(&mut rng, &d, 0)))
            .collect();
        let (report, unknown) = order_equals_inclusion_check(&d, &pairs, HORIZON);
        let fixture_ok = report.failures == 0 && unknown <= 10;
        ok &= fixture_ok;
        parts.push(json!({
            "fixture": name,
            "pairs": pairs.len(),
            "disagreements": report.failures,
            "unknown": unknown,
            "first": report.first_counterexample,
        }));
    }
    (ok, json!({"criterion": 5, "fixtures": parts}))
}

// ---------------------------------------------------------------------------
// Criterion 6: sups of compacts and compact interpolation
// ---------------------------------------------------------------------------

fn criterion6() -> (bool, Value) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, d) in fixture_diagrams() {
        let mut rng = ChaCha8Rng::seed_from_u64(66);
        let mut rebuild_failures = 0u32;
        let mut first: Option<String> = None;
        for _ in 0..100 {
            let a = sample_thread(&mut rng, &d, 25);
            if let Err(e) = compacts_below(&d, &a, 4, HORIZON) {
                rebuild_failures += 1;
                if first.is_none() {
                    first = Some(format!("{}: {e}", a.encode()));
                }
            }
        }
        let pairs: Vec<(Thread, Thread)> = (0..200)
            .map(|_| (sample_thread(&mut rng, &d, 12), sample_thread(&mut rng, &d, 12)))
            .collect();
        let (report, unknown) = compact_interpolation_check(&d, &pairs, HORIZON);
        let fixture_ok = rebuild_failures == 0 && report.failures == 0 && unknown <= 10;
        ok &= fixture_ok;
        parts.push(json!({
            "fixture": name,
            "rebuild_failures": rebuild_failures,
            "rebuild_first": first,
            "interpolation_failures": report.failures,
            "interpolation_first": report.first_counterexample,
            "unknown": unknown,
        }));
    }
    (ok, json!({"criterion": 6, "fixtures": parts}))
}

// ---------------------------------------------------------------------------
// Criterion 7: the finite-dimensional oracle
// ---------------------------------------------------------------------------

fn criterion7() -> (bool, Value) {
    let report = oracle_selftest(500, 7);
    let ok = report.passed()
        && report.checks.iter().any(|c| c.law == "witness-residual" && c.cases > 0)
        && report.checks.iter().any(|c| c.law == "witness-falsification" && c.cases > 0)
        && report.checks.iter().any(|c| c.law == "rank-agreement" && c.cases > 0);
    (
        ok,
        json!({
            "criterion": 7,
            "cases": 500,
            "instabilities": report.instabilities,
            "checks": reports_json(&report.checks),
        }),
    )
}

// ---------------------------------------------------------------------------
// Criterion 8: trace consistency
// ---------------------------------------------------------------------------

fn trace_leq(a: &TraceValue, b: &TraceValue) -> bool {
    match (a, b) {
        (TraceValue::Exact(x), TraceValue::Exact(y)) => x <= y,
        (_, TraceValue::Infinite) => true,
        (TraceValue::Infinite, _) => false,
        _ => unreachable!("integer Perron roots stay exact"),
    }
}

fn criterion8() -> (bool, Value) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, d) in [("uhf2", uhf2()), ("uhf6", uhf6())].map(|(n, b)| (n, b.to_cu_diagram())) {
        let mut rng = ChaCha8Rng::seed_from_u64(88);
        let mut le_pairs = 0u32;
        let mut violations = 0u32;
        for i in 0..200 {
            // Half constructed comparable pairs, half random.
            let a = sample_thread(&mut rng, &d, 15);
            let b = if i % 2 == 0 {
                a.add(&d, &sample_thread(&mut rng, &d, 15)).unwrap()
            } else {
                sample_thread(&mut rng, &d, 15)
            };
            if af_compare(&d, &a, &b, HORIZON) == Tri::Le {
                le_pairs += 1;
                let ta = perron_trace(&d, &a).unwrap();
                let tb = perron_trace(&d, &b).unwrap();
                if !trace_leq(&ta, &tb) {
                    violations += 1;
                }
            }
        }
        ok &= violations == 0 && le_pairs > 50;
        parts.push(json!({"fixture": name, "le_pairs": le_pairs, "violations": violations}));
    }
    (ok, json!({"criterion": 8, "fixtures": parts}))
}

// ---------------------------------------------------------------------------
// The tests
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_theorem_law_suite() {
    let (ok, summary) = cached(0).clone();
    verdict(1, "theorem-law-suite", ok);
    assert!(ok, "{summary}");
}

#[test]
fn criterion_2_morphism_laws() {
    let (ok, summary) = cached(1).clone();
    verdict(2, "morphism-laws", ok);
    assert!(ok, "{summary}");
}

#[test]
fn criterion_3_thread_calculus() {
    let (ok, summary) = cached(2).clone();
    verdict(3, "thread-calculus", ok);
    assert!(ok, "{summary}");
}

#[test]
fn criterion_4_universal_property() {
    let (ok, summary) = cached(3).clone();
    verdict(4, "universal-property", ok);
    assert!(ok, "{summary}");
}

#[test]
fn criterion_5_order_equals_inclusion() {
    let (ok, summary) = cached(4).clone();
    verdict(5, "order-equals-inclusion", ok);
    assert!(ok, "{summary}");
}

#[test]
fn criterion_6_sups_of_compacts_and_interpolation() {
    let (ok, summary) = cached(5).clone();
    verdict(6, "sups-of-compacts-and-interpolation", ok);
    assert!(ok, "{summary}");
}

#[test]
fn criterion_7_oracle_agreement() {
    let (ok, summary) = cached(6).clone();
    verdict(7, "oracle-agreement", ok);
    assert!(ok, "{summary}");
}

#[test]
fn criterion_8_trace_consistency() {
    let (ok, summary) = cached(7).clone();
    verdict(8, "trace-consistency", ok);
    assert!(ok, "{summary}");
}

#[test]
fn criterion_9_determinism() {
    let reruns: [fn() -> (bool, Value); 8] = [
        criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7,
        criterion8,
    ];
    let mut ok = true;
    for (i, f) in reruns.iter().enumerate() {
        let first = serde_json::to_string(&cached(i).1).unwrap();
        let second = serde_json::to_string(&f().1).unwrap();
        if first != second {
            ok = false;
            eprintln!("criterion {} reports differ between runs", i + 1);
        }
    }
    verdict(9, "determinism", ok);
    assert!(ok);
}
