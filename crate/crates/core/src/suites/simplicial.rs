//! q-differentials of semi-simplicial sets.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{error_witness, group_record, CheckRecord, SuiteConfig};
use crate::complex::root_of_unity;
use crate::cyclo::{field, Scalar};
use crate::delta::{builtin, random_glued, DeltaSet, BUILTIN_NAMES};

/// `d_q^k` on the cell `cell` of dimension `n`, by iterating the matrices.
fn iterated(x: &DeltaSet, n: usize, cell: usize, k: usize, q: &Scalar) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(q.field()); x.cells(n).len()];
    v[cell] = Scalar::one(q.field());
    for step in 0..k {
        v = x.dq_matrix(n - step, q).expect("cells exist").apply(&v);
    }
    v
}

fn power_mismatch(x: &DeltaSet, q: &Scalar) -> Option<serde_json::Value> {
    let top = x.top_dim()?;
    for n in 0..=top {
        for cell in 0..x.cells(n).len() {
            for k in 0..=n.min(4) {
                if iterated(x, n, cell, k, q) != x.dq_power_oracle(n, cell, k, q) {
                    return Some(json!({ "dim": n, "cell": x.cells(n)[cell], "power": k, "q": q.to_string() }));
                }
            }
        }
    }
    None
}

pub fn run(config: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let builtins: Vec<(String, DeltaSet)> =
        BUILTIN_NAMES.iter().map(|&name| (name.to_string(), builtin(name).expect("builtin exists"))).collect();
    let glued_count = config.count(20, 20);
    let glued: Vec<(String, DeltaSet)> = (0..glued_count)
        .map(|k| {
            let seed = config.instance_seed("simplicial.glued", k);
            (format!("glued seed {seed}"), random_glued(&mut ChaCha8Rng::seed_from_u64(seed), 4))
        })
        .collect();
    for order in config.orders(&[2, 3, 4, 5, 6]) {
        let Ok(q) = root_of_unity(order) else { continue };
        for (family, items) in [("builtin", &builtins), ("glued", &glued)] {
            out.push(group_record(
                format!("simplicial.nilpotent.{family}.N{order}"),
                "d_q^N = 0 on the chains of a Δ-set at a primitive N-th root",
                format!("{family} complexes, q = ζ_{order}"),
                items.iter().map(|(name, x)| {
                    x.chain_ncomplex(&q, Some(order)).err().map(|e| json!({ "complex": name, "error": e.to_string() }))
                }),
            ));
        }
    }
    let rational = Scalar::from_int(&field(1), 2);
    let qs: Vec<(String, Scalar)> = [2u32, 3, 4]
        .iter()
        .filter_map(|&m| root_of_unity(m).ok().map(|z| (format!("z{m}"), z)))
        .chain([("2".to_string(), rational)])
        .collect();
    let sample: Vec<&(String, DeltaSet)> = builtins.iter().chain(glued.iter().take(5)).collect();
    for (label, q) in &qs {
        out.push(group_record(
            format!("simplicial.power-expansion.q{label}"),
            "d_q^k = [k]_q! Σ_{i_1 ≥ … ≥ i_k} q^{i_1+…+i_k} ∂_{i_1}…∂_{i_k}",
            format!("builtins and 5 glued complexes, q = {q}, k ≤ 4"),
            sample.iter().map(|(name, x)| power_mismatch(x, q).map(|mut w| {
                w["complex"] = json!(name);
                w
            })),
        ));
    }
    // a q that is not a root of unity must be rejected as an order claim
    let rejected = builtin("delta2").expect("builtin").chain_ncomplex(&qs[3].1, Some(3));
    out.push(CheckRecord::from_witness(
        "simplicial.order-claim-rejected",
        "claiming an order for a q that is not a root of unity is an error",
        "Δ², q = 2, N = 3",
        rejected.is_ok().then(|| error_witness("accepted")),
    ));
    out
}
