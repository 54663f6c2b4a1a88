//! Quadratic relations of quantum matrices and their coaction on forms.

use serde_json::json;

use super::{error_witness, CheckRecord, SuiteConfig};
use crate::complex::root_of_unity;
use crate::linalg::Subspace;
use crate::quantum::{
    coaction_failure, coaction_relation_vectors, comultiplication_failure, differential_generator_failure, listed_relation_vectors,
    relations_from_covariance, CoactionSide,
};

/// Expected dimension `n²(n²-1)/2` of the covariance relations.
pub const COVARIANCE_SPAN_DIM: [(usize, usize); 2] = [(2, 6), (3, 36)];

pub fn run(config: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for order in config.orders(&[3, 4]).into_iter().filter(|&n| n >= 3) {
        let Ok(q) = root_of_unity(order) else { continue };
        let field = q.field();
        for (n, expected_dim) in COVARIANCE_SPAN_DIM {
            let inst = format!("n = {n}, q = ζ_{order}");
            let derived_vectors = coaction_relation_vectors(n, &q, CoactionSide::Columns);
            let listed_vectors = listed_relation_vectors(n, &q);
            let derived = relations_from_covariance(n, &q);
            let listed = Subspace::span(field, n.pow(4), &listed_vectors);
            out.push(CheckRecord::from_witness(
                format!("quantum.relation-span-dim.n{n}.N{order}"),
                "covariance relations span a space of dimension n²(n²-1)/2",
                inst.clone(),
                (derived.dim() != expected_dim).then(|| json!({ "dim": derived.dim(), "expected": expected_dim })),
            ));
            let sum = Subspace::span(field, n.pow(4), &[derived_vectors.clone(), listed_vectors.clone()].concat());
            out.push(CheckRecord::from_witness(
                format!("quantum.span-equality.n{n}.N{order}"),
                "the listed relations span the covariance relations",
                inst.clone(),
                (sum.dim() != derived.dim() || sum.dim() != listed.dim())
                    .then(|| json!({ "covariance_dim": derived.dim(), "listed_dim": listed.dim(), "sum_dim": sum.dim() })),
            ));
            let comul = |rels: &[Vec<crate::cyclo::Scalar>]| match comultiplication_failure(n, rels, field) {
                Ok(None) => None,
                Ok(Some(k)) => Some(json!({ "relation": k })),
                Err(e) => Some(error_witness(e)),
            };
            out.push(CheckRecord::from_witness(
                format!("quantum.comultiplication.n{n}.N{order}"),
                "Δ(r) ∈ I⊗F₂ + F₂⊗I for the covariance relations",
                inst.clone(),
                comul(&derived_vectors),
            ));
            out.push(CheckRecord::from_witness(
                format!("quantum.comultiplication-listed.n{n}.N{order}"),
                "Δ(r) ∈ I⊗F₂ + F₂⊗I for the listed relations",
                inst.clone(),
                comul(&listed_vectors),
            ));
            let passing_drops: Vec<usize> = (0..derived_vectors.len())
                .filter(|&k| {
                    let mut rels = derived_vectors.clone();
                    rels.remove(k);
                    comul(&rels).is_none()
                })
                .collect();
            out.push(CheckRecord::from_witness(
                format!("quantum.drop-one-control.n{n}.N{order}"),
                "dropping any single covariance relation breaks the comultiplication check",
                inst.clone(),
                (!passing_drops.is_empty()).then(|| json!({ "dropped_but_passing": passing_drops })),
            ));
            out.push(CheckRecord::from_witness(
                format!("quantum.coaction.n{n}.N{order}"),
                "the coaction maps the relations of the form algebra into I ⊗ Ω",
                inst.clone(),
                coaction_failure(n, &q, &derived, CoactionSide::Columns).map(|_| json!({ "side": "columns" })),
            ));
            out.push(CheckRecord::from_witness(
                format!("quantum.coaction-transposed-control.n{n}.N{order}"),
                "transforming ξ by rows instead of columns breaks the coaction check",
                inst.clone(),
                coaction_failure(n, &q, &derived, CoactionSide::RowsOnForms)
                    .is_none()
                    .then(|| json!({ "error": "control unexpectedly passed" })),
            ));
            out.push(CheckRecord::from_witness(
                format!("quantum.coaction-differential.n{n}.N{order}"),
                "α(d x_j) = (1 ⊗ d) α(x_j) on generators",
                inst.clone(),
                differential_generator_failure(n, CoactionSide::Columns).map(|(i, j)| json!({ "i": i, "j": j })),
            ));
            out.push(CheckRecord::from_witness(
                format!("quantum.coaction-differential-control.n{n}.N{order}"),
                "the transposed coaction does not commute with d on generators",
                inst,
                differential_generator_failure(n, CoactionSide::RowsOnForms)
                    .is_none()
                    .then(|| json!({ "error": "control unexpectedly passed" })),
            ));
        }
    }
    out
}
