//! Acceptance criteria: one PASS/FAIL line per criterion with its time budget.
//!
//! A criterion passes when every one of its records passes within budget.
//! Some criteria contain claims that the checks show to be false as stated;
//! their failing records are listed under the criterion and do not make this
//! target exit nonzero. Any other failing record, or a blown budget, does.

use std::time::{Duration, Instant};

use qhomalg::complex::{ComplexRepr, NComplex};
use qhomalg::cyclo::{Scalar, ScalarRepr};
use qhomalg::delta::{builtin, DeltaSet, DeltaSetRepr};
use qhomalg::forms::{random_form, FormRepr, QForm};
use qhomalg::gauge::{random_connection, ConnectionRepr, QConnection};
use qhomalg::generate::{random_ncomplex, Profile};
use qhomalg::suites::{self, run_suite, CheckRecord, Suite, SuiteConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 42;

/// Record ids of claims known to be false as stated, with the reason.
const KNOWN_FALSE: &[(&str, &str)] = &[
    ("derham.leibniz.", "q-Leibniz fails for q² ≠ 1 in the ξ-commutation algebra"),
    ("derham.power-leibniz-uncorrected.", "exponent q^{ip} fails; q^{i(k-p)} holds"),
    ("derham.faces-literal.", "Σ q^ν ∂_ν equals d only after conjugation by Φ"),
    ("derham.vanishing.", "_pH^i is all of Ker d^p when i + p + 1 ≤ N"),
    ("quantum.span-equality.", "listed relations differ from the covariance relations"),
    ("quantum.comultiplication-listed.", "listed relations do not generate a bialgebra ideal"),
    ("gauge.order-zero.", "∇^N keeps a first-order term for N ≥ 3"),
    ("gauge.expansion.", "q-Leibniz for ∇ fails for q² ≠ 1"),
    ("gauge.formula.", "closed curvature formula differs from ∇³ on the frame"),
    ("gauge.covariance-unipotent.", "∇^N is not order zero, so nonconstant gauge changes can fail"),
    ("gauge.bianchi.", "∇^N is not order zero"),
    ("gauge.chern-closed.", "∇^N is not order zero"),
    ("gauge.divergence-literal.", "the identity needs the constant 1 + q"),
];

fn known_false(id: &str) -> Option<&'static str> {
    KNOWN_FALSE.iter().find(|(p, _)| id.starts_with(p)).map(|(_, why)| *why)
}

fn config(instances: Option<usize>) -> SuiteConfig {
    SuiteConfig { seed: SEED, profile: Profile::Small, order: None, instances }
}

fn keep(records: Vec<CheckRecord>, prefixes: &[&str]) -> Vec<CheckRecord> {
    records.into_iter().filter(|r| prefixes.iter().any(|p| r.id.starts_with(p))).collect()
}

struct Outcome {
    passed: bool,
    regression: bool,
}

fn report(number: u32, title: &str, budget: Duration, run: impl FnOnce() -> Vec<CheckRecord>) -> Outcome {
    let start = Instant::now();
    let records = run();
    let elapsed = start.elapsed();
    let failing: Vec<&CheckRecord> = records.iter().filter(|r| !r.passed).collect();
    let in_time = elapsed <= budget;
    let passed = failing.is_empty() && in_time && !records.is_empty();
    println!(
        "criterion {number:>2} {}  {title}  [{} records, {:.2} s of {} s]",
        if passed { "PASS" } else { "FAIL" },
        records.len(),
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    let mut regression = !in_time || records.is_empty();
    for r in &failing {
        match known_false(&r.id) {
            Some(why) => println!("     false as stated: {}  ({why})", r.id),
            None => {
                regression = true;
                println!("     unexpected failure: {}  {}", r.id, r.witness.as_ref().map(|w| w.to_string()).unwrap_or_default());
            }
        }
    }
    if !in_time {
        println!("     over budget");
    }
    Outcome { passed, regression }
}

fn round_trip<T, R>(label: &str, value: &T, to: impl Fn(&T) -> R, from: impl Fn(&R) -> Option<T>) -> CheckRecord
where
    T: PartialEq,
    R: serde::Serialize + serde::de::DeserializeOwned + PartialEq,
{
    let repr = to(value);
    let text = serde_json::to_string(&repr).expect("serializable");
    let back: Option<R> = serde_json::from_str(&text).ok();
    let ok = back.as_ref() == Some(&repr) && back.as_ref().and_then(&from).is_some_and(|v| v == *value);
    CheckRecord::from_witness(format!("infra.round-trip.{label}"), "serialize then parse gives the same object", "seeded instance", (!ok).then(|| serde_json::json!({ "json": text })))
}

fn infrastructure() -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let c = random_ncomplex(4, Profile::Small, SEED).expect("valid order").complex;
    out.push(round_trip("complex", &c, NComplex::to_repr, |r: &ComplexRepr| NComplex::from_repr(r).ok()));
    let q = qhomalg::complex::root_of_unity(5).expect("valid order");
    out.push(round_trip("scalar", &q, Scalar::to_repr, |r: &ScalarRepr| Scalar::from_repr(r).ok()));
    let f = random_form(q.field(), 3, 2, 3, &mut rng);
    out.push(round_trip("form", &f, QForm::to_repr, |r: &FormRepr| QForm::from_repr(r).ok()));
    let a = random_connection(3, 4, 2, &mut rng).expect("valid order");
    out.push(round_trip("connection", &a, QConnection::to_repr, |r: &ConnectionRepr| QConnection::from_repr(r).ok()));
    let x = builtin("boundary3").expect("builtin exists");
    out.push(round_trip("deltaset", &x, DeltaSet::to_repr, |r: &DeltaSetRepr| DeltaSet::from_repr(r).ok()));
    for suite in [Suite::QCombinatorics, Suite::Simplicial, Suite::Derham, Suite::Gauge] {
        let first = run_suite(suite, &config(None)).to_json();
        let second = run_suite(suite, &config(None)).to_json();
        out.push(CheckRecord::from_witness(
            format!("infra.deterministic.{suite}"),
            "two runs with the same seed give identical reports",
            "seed 42, small profile",
            (first != second).then(|| serde_json::json!({ "suite": suite.to_string() })),
        ));
    }
    out
}

fn main() {
    let secs = Duration::from_secs;
    let outcomes = [
        report(1, "q-combinatorics at roots of unity", secs(1), || suites::run_qcomb(&config(None))),
        report(2, "d_q^N = 0 on Δ-sets and the expansion of d_q^k", secs(10), || suites::run_simplicial(&config(None))),
        report(3, "total homology of 100 N-complexes per N ∈ {3,4,5}", secs(60), || {
            keep(suites::ncomplex::total_checks(&config(Some(100))), &["ncomplex.homology-oracle", "ncomplex.total-"])
        }),
        report(4, "two-term and six-term sequences on 50 pairs", secs(10), || suites::ncomplex::sequence_checks(&config(Some(50)))),
        report(5, "every level has a nonzero cell once one cell is nonzero", secs(10), || {
            keep(suites::ncomplex::total_checks(&config(Some(20))), &["ncomplex.level-nonvanishing"])
        }),
        report(6, "q-tensor and q-Hom: validation, expansions, composition", secs(30), || suites::homops::operation_checks(&config(None))),
        report(7, "25 null-homotopic morphisms", secs(30), || suites::homops::null_homotopy_checks(&config(Some(25)))),
        report(8, "Poincaré polynomial at ζ_N on 100 exact complexes per N", secs(10), || suites::ncomplex::poincare_checks(&config(Some(100)))),
        report(9, "q-de Rham forms", secs(120), || suites::run_derham(&config(None))),
        report(10, "quantum matrix relations and coaction", secs(30), || suites::run_quantum(&config(None))),
        report(11, "N-curvature of 25 connections per N ∈ {2,3,4}", secs(120), || suites::run_gauge(&config(Some(25)))),
        report(12, "serialization round-trip and deterministic reports", secs(5), infrastructure),
    ];
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed} of {} criteria pass", outcomes.len());
    if outcomes.iter().any(|o| o.regression) {
        std::process::exit(1);
    }
}
