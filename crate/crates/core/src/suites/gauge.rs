//! Connections, their N-curvature and its identities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{group_record, CheckRecord, SuiteConfig};
use crate::complex::root_of_unity;
use crate::forms::{random_form, QForm};
use crate::gauge::{
    chern_form, divergence_defect, polynomial_inverse, random_connection, random_unipotent, DivergenceConstant, GaugeError,
    MatrixForm, QConnection, VectorForm,
};
use crate::generate::random_invertible;

struct Instance {
    seed: u64,
    conn: QConnection,
    frame: MatrixForm,
}

impl Instance {
    fn witness(&self, extra: Value) -> Value {
        json!({ "seed": self.seed, "connection": self.conn.to_repr(), "check": extra })
    }
}

fn first_entry(m: &MatrixForm) -> String {
    m.entries().iter().find(|e| !e.is_zero()).map(QForm::to_string).unwrap_or_default()
}

fn covariance_failure(inst: &Instance, g: &MatrixForm) -> Result<Option<Value>, GaugeError> {
    let q = inst.conn.q();
    let g_inv = polynomial_inverse(g, q)?;
    let transformed = inst.conn.gauge_transform(g)?.frame_curvature();
    let expected = g_inv.mul(&inst.frame, q).mul(g, q);
    let defect = transformed.sub(&expected);
    Ok((!defect.is_zero()).then(|| json!({ "defect": first_entry(&defect) })))
}

fn err_witness(r: Result<Option<Value>, GaugeError>) -> Option<Value> {
    r.unwrap_or_else(|e| Some(json!({ "error": e.to_string() })))
}

pub fn run(config: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let count = config.count(10, 25);
    for order in config.orders(&[2, 3, 4]).into_iter().filter(|&n| n >= 2) {
        let Ok(q) = root_of_unity(order) else { continue };
        let n = order as usize + 1;
        let tag = format!("gauge.connections.N{order}");
        let instances: Vec<Instance> = (0..count)
            .map(|k| {
                let seed = config.instance_seed(&tag, k);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let r = rng.gen_range(1..=2);
                let conn = random_connection(order, n, r, &mut rng).expect("valid order");
                let frame = conn.frame_curvature();
                Instance { seed, conn, frame }
            })
            .collect();
        let inst_desc = format!("N = {order}, {n} variables, rank ≤ 2");
        out.push(group_record(
            format!("gauge.order-zero.N{order}"),
            "∇^N(f s) = f ∇^N(s) for probe polynomials f",
            inst_desc.clone(),
            instances.iter().map(|i| {
                i.conn.order_zero_defect(&i.frame).map(|(probe, column, d)| {
                    let entry = d.entries().iter().find(|e| !e.is_zero()).map(QForm::to_string).unwrap_or_default();
                    i.witness(json!({ "probe": probe, "column": column, "defect": entry }))
                })
            }),
        ));
        out.push(group_record(
            format!("gauge.expansion.N{order}"),
            "∇^n(f s) = Σ_k [n k]_q d^k(f) ∇^{n-k}(s) for n ≤ N",
            inst_desc.clone(),
            instances.iter().map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(i.seed ^ 1);
                let f = random_form(q.field(), n, 0, 2, &mut rng);
                let s = VectorForm::new((0..i.conn.rank()).map(|_| random_form(q.field(), n, 0, 1, &mut rng)).collect());
                let fs = s.left_mul(&f, &q);
                (0..=order).find_map(|k| {
                    let lhs = i.conn.nabla_power(&fs, k).expect("shapes match");
                    let rhs = i.conn.lemma_expand(&f, &s, k).expect("shapes match");
                    (lhs != rhs).then(|| i.witness(json!({ "n": k, "f": f.to_repr() })))
                })
            }),
        ));
        if order == 3 {
            out.push(group_record(
                "gauge.formula.N3".into(),
                "F = d²A + d(A)A + q A d(A) + AAA equals ∇³ on the frame",
                inst_desc.clone(),
                instances.iter().map(|i| {
                    let formula = i.conn.curvature_formula_n3().expect("order 3");
                    let defect = formula.sub(&i.frame);
                    (!defect.is_zero()).then(|| i.witness(json!({ "defect": first_entry(&defect) })))
                }),
            ));
        }
        out.push(group_record(
            format!("gauge.covariance-constant.N{order}"),
            "F' = g^{-1} F g for constant invertible g",
            inst_desc.clone(),
            instances.iter().map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(i.seed ^ 2);
                let m = random_invertible(q.field(), i.conn.rank(), &mut rng);
                err_witness(covariance_failure(i, &MatrixForm::from_matrix(&m, n))).map(|w| i.witness(w))
            }),
        ));
        out.push(group_record(
            format!("gauge.covariance-unipotent.N{order}"),
            "F' = g^{-1} F g for unipotent polynomial g",
            inst_desc.clone(),
            instances.iter().map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(i.seed ^ 3);
                let g = random_unipotent(q.field(), n, i.conn.rank(), &mut rng);
                err_witness(covariance_failure(i, &g)).map(|w| i.witness(w))
            }),
        ));
        out.push(group_record(
            format!("gauge.flat-stability.N{order}"),
            "gauge transforms of the zero connection are flat",
            inst_desc.clone(),
            instances.iter().map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(i.seed ^ 4);
                let g = random_unipotent(q.field(), n, 2, &mut rng);
                let zero = QConnection::zero(order, n, 2).expect("valid order");
                match zero.gauge_transform(&g) {
                    Ok(t) => {
                        let f = t.frame_curvature();
                        (!f.is_zero()).then(|| json!({ "seed": i.seed, "curvature": first_entry(&f) }))
                    }
                    Err(e) => Some(json!({ "seed": i.seed, "error": e.to_string() })),
                }
            }),
        ));
        out.push(group_record(
            format!("gauge.bianchi.N{order}"),
            "dF + AF - FA = 0",
            inst_desc.clone(),
            instances.iter().map(|i| {
                let d = i.conn.bianchi_defect(&i.frame);
                (!d.is_zero()).then(|| i.witness(json!({ "defect": first_entry(&d) })))
            }),
        ));
        for p in 1..=2u32 {
            let vacuous = order as usize * p as usize + 1 > n;
            out.push(group_record(
                format!("gauge.chern-closed.p{p}.N{order}"),
                "d tr(F^p) = 0",
                format!("{inst_desc}{}", if vacuous { ", vacuous by degree" } else { "" }),
                instances.iter().map(|i| {
                    let (_, d) = chern_form(&i.frame, p, &q);
                    (!d.is_zero()).then(|| i.witness(json!({ "p": p, "d_trace": d.to_string() })))
                }),
            ));
        }
    }
    if config.orders(&[3]).contains(&3) {
        let q = root_of_unity(3).expect("valid order");
        let count = config.count(10, 25);
        let conns: Vec<(u64, QConnection)> = (0..count)
            .map(|k| {
                let seed = config.instance_seed("gauge.divergence", k);
                let c = random_connection(3, 3, 2, &mut ChaCha8Rng::seed_from_u64(seed)).expect("valid order");
                // x₁x₂ξ₃ in the trace keeps tr d²A nonzero
                let f = q.field();
                let bump = QForm::x(f, 3, 0).mul(&QForm::x(f, 3, 1), &q).mul(&QForm::xi(f, 3, 2), &q);
                let a = c.a().add(&MatrixForm::from_fn(2, |r, s| if r == 0 && s == 0 { bump.clone() } else { QForm::zero(f, 3) }));
                (seed, QConnection::new(a, 3).expect("entries are 1-forms"))
            })
            .collect();
        let nonvacuous = conns.iter().filter(|(_, c)| !c.a().d(&q).d(&q).trace().is_zero()).count();
        for (label, constant, claim) in [
            ("literal", DivergenceConstant::Literal, "tr d²A = (∂₁∂₂A₃ + q∂₁∂₃A₂ + q²∂₂∂₃A₁) ξ₁ξ₂ξ₃"),
            ("corrected", DivergenceConstant::Corrected, "tr d²A = (1+q)(∂₁∂₂A₃ + q∂₁∂₃A₂ + q²∂₂∂₃A₁) ξ₁ξ₂ξ₃"),
        ] {
            out.push(group_record(
                format!("gauge.divergence-{label}.N3"),
                claim,
                format!("N = 3, 3 variables, rank 2, tr d²A ≠ 0 in {nonvacuous} of {count}"),
                conns.iter().map(|(seed, c)| match divergence_defect(c.a(), &q, constant) {
                    Ok(d) if d.is_zero() => None,
                    Ok(d) => Some(json!({ "seed": seed, "connection": c.to_repr(), "defect": d.to_string() })),
                    Err(e) => Some(json!({ "seed": seed, "error": e.to_string() })),
                }),
            ));
        }
        let f = q.field();
        let a = QForm::x(f, 2, 1).mul(&QForm::xi(f, 2, 0), &q);
        let c = QConnection::new(MatrixForm::from_fn(1, |_, _| a.clone()), 3).expect("valid connection");
        out.push(CheckRecord::from_witness(
            "gauge.rank-one-flat.N3",
            "A = x₂ξ₁ is flat at N = 3",
            "rank 1, 2 variables",
            (!c.frame_curvature().is_zero()).then(|| json!({ "curvature": first_entry(&c.frame_curvature()) })),
        ));
    }
    out
}
