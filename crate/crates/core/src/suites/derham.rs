//! The q-de Rham complex of polynomial forms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{error_witness, group_record, CheckRecord, SuiteConfig};
use crate::complex::root_of_unity;
use crate::cyclo::Scalar;
use crate::forms::{leibniz_defect, power_leibniz_defect, random_first_variable_form, random_form, truncate_to_ncomplex, vanishing_table, PowerLeibnizForm, QForm};

fn random_pair(q: &Scalar, rng: &mut impl Rng) -> (QForm, QForm) {
    let n = rng.gen_range(2..=3);
    let u = random_form(q.field(), n, rng.gen_range(0..=2), 2, rng);
    let v = random_form(q.field(), n, rng.gen_range(0..=2), 2, rng);
    (u, v)
}

fn pair_witness(seed: u64, u: &QForm, v: &QForm, defect: &QForm) -> Value {
    json!({ "seed": seed, "u": u.to_repr(), "v": v.to_repr(), "defect": defect.to_string() })
}

/// `∂_i ∂_j = ∂_{j-1} ∂_i` for `i < j`, with `∂_j` applied first on the left.
fn face_relation_failure(w: &QForm) -> Option<Value> {
    let n = w.n_vars();
    for i in 0..n {
        for j in i + 1..n {
            if w.face(j).face(i) != w.face(i).face(j - 1) {
                return Some(json!({ "form": w.to_repr(), "i": i, "j": j }));
            }
        }
    }
    None
}

pub fn run(config: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let count = config.count(20, 50);
    for order in config.orders(&[2, 3, 4]).into_iter().filter(|&n| n >= 2) {
        let Ok(q) = root_of_unity(order) else { continue };
        out.push(group_record(
            format!("derham.nilpotent.N{order}"),
            "d^N = 0 on every fixed-total-degree slice",
            format!("N = {order}, 1 ≤ n ≤ 3, total degree ≤ 5"),
            (1..=3usize).flat_map(|n| (0..=5u32).map(move |m| (n, m))).map(|(n, m)| {
                truncate_to_ncomplex(n, &q, order, m, true).err().map(|e| json!({ "n": n, "total_degree": m, "error": e.to_string() }))
            }),
        ));
        let tag = format!("derham.forms.N{order}");
        let pairs: Vec<(u64, QForm, QForm)> = (0..count)
            .map(|k| {
                let s = config.instance_seed(&tag, k);
                let (u, v) = random_pair(&q, &mut ChaCha8Rng::seed_from_u64(s));
                (s, u, v)
            })
            .collect();
        out.push(group_record(
            format!("derham.leibniz.N{order}"),
            "d(uv) = d(u) v + q^{deg u} u d(v)",
            format!("N = {order}, random forms on 2-3 variables"),
            pairs.iter().map(|(s, u, v)| {
                let d = leibniz_defect(u, v, &q);
                (!d.is_zero()).then(|| pair_witness(*s, u, v, &d))
            }),
        ));
        let generic = Scalar::from_int(&crate::cyclo::field(1), 2);
        let compatible: Vec<(u64, QForm, QForm, QForm, QForm)> = (0..count)
            .map(|k| {
                let s = config.instance_seed(&format!("derham.compatible.N{order}"), k);
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                let i = rng.gen_range(0..=1);
                let j = rng.gen_range(0..=2);
                let u = random_first_variable_form(q.field(), 3, i, 3, &mut rng);
                let v = random_form(q.field(), 3, j, 3, &mut rng);
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                let gu = random_first_variable_form(generic.field(), 3, i, 3, &mut rng);
                let gv = random_form(generic.field(), 3, j, 3, &mut rng);
                (s, u, v, gu, gv)
            })
            .collect();
        for (label, form) in [("uncorrected", PowerLeibnizForm::Uncorrected), ("corrected", PowerLeibnizForm::Corrected)] {
            let claim = match form {
                PowerLeibnizForm::Uncorrected => "d^k(uv) = Σ_p q^{ip} [k p]_q d^p(u) d^{k-p}(v)",
                PowerLeibnizForm::Corrected => "d^k(uv) = Σ_p q^{i(k-p)} [k p]_q d^p(u) d^{k-p}(v)",
            };
            out.push(group_record(
                format!("derham.power-leibniz-{label}.N{order}"),
                claim,
                format!("N = {order}, u in x₁ and ξ₁ where q-Leibniz holds, k ≤ N+1, q = ζ_{order} and q = 2"),
                compatible.iter().map(|(s, u, v, gu, gv)| {
                    (1..=order + 1).find_map(|k| {
                        [(u, v, &q), (gu, gv, &generic)].into_iter().find_map(|(u, v, q)| {
                            let d = power_leibniz_defect(u, v, k, q, form);
                            (!d.is_zero()).then(|| {
                                let mut w = pair_witness(*s, u, v, &d);
                                w["k"] = json!(k);
                                w["q"] = json!(q.to_string());
                                w
                            })
                        })
                    })
                }),
            ));
        }
        out.push(group_record(
            format!("derham.face-relations.N{order}"),
            "the face operators satisfy ∂_i ∂_j = ∂_{j-1} ∂_i for i < j",
            format!("N = {order}, random forms"),
            pairs.iter().flat_map(|(_, u, v)| [face_relation_failure(u), face_relation_failure(v)]),
        ));
        out.push(group_record(
            format!("derham.faces-literal.N{order}"),
            "Σ_ν q^ν ∂_ν equals d",
            format!("N = {order}, random forms"),
            pairs.iter().map(|(_, u, _)| {
                let (lhs, rhs) = (u.face_sum(&q), u.exterior_d(&q));
                (lhs != rhs).then(|| json!({ "form": u.to_repr(), "faces": lhs.to_string(), "d": rhs.to_string() }))
            }),
        ));
        let q_inv = q.inv().expect("root is invertible");
        out.push(group_record(
            format!("derham.faces-conjugated.N{order}"),
            "Σ_ν q^ν ∂_ν = Φ d_{q^{-1}} Φ^{-1} with Φ(x^α ξ_J) = q^{-Σ i α_i}",
            format!("N = {order}, random forms"),
            pairs.iter().map(|(_, u, _)| {
                let conj = u.rescale_by_position(&q, true).exterior_d(&q_inv).rescale_by_position(&q, false);
                (conj != u.face_sum(&q)).then(|| json!({ "form": u.to_repr() }))
            }),
        ));
        // the vanishing statement assumes N ≤ n + 1
        for n in (1..=3usize).filter(|&n| order as usize <= n + 1) {
            let table = vanishing_table(n, &q, order, 4);
            let (vanishing, constants) = match table {
                Ok(t) => {
                    let bad = t.iter().find(|c| c.in_range && c.total_degree >= 1 && c.dim != 0).map(|c| json!(c));
                    let consts = t.iter().find(|c| c.total_degree == 0 && c.dim != 1).map(|c| json!(c));
                    (bad, consts)
                }
                Err(e) => (Some(error_witness(&e)), Some(error_witness(&e))),
            };
            out.push(CheckRecord::from_witness(
                format!("derham.vanishing.n{n}.N{order}"),
                "_pH^k = 0 when k + p + 1 ≤ N, in total degrees 1..4",
                format!("n = {n}, N = {order}"),
                vanishing,
            ));
            out.push(CheckRecord::from_witness(
                format!("derham.constants-cell.n{n}.N{order}"),
                "in total degree 0 every _pH^0 is the line of constants",
                format!("n = {n}, N = {order}"),
                constants,
            ));
        }
    }
    out
}
