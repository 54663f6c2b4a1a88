//! q-tensor products, q-Hom complexes, composition and null-homotopies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{error_witness, group_record, CheckRecord, SuiteConfig};
use crate::complex::{root_of_unity, ComplexError, NComplex};
use crate::cyclo::{make_field, FieldRef, Scalar};
use crate::generate::{random_ncomplex_in, Profile};
use crate::homops::{
    compose, hom_differential, hom_power_expand, induced_on_homology, q_hom, q_tensor, tensor_power_expand, GradedMap, HomComplex,
    HomConvention, HomExpansion,
};

fn random_vector(field: &FieldRef, len: usize, rng: &mut impl Rng) -> Vec<Scalar> {
    (0..len).map(|_| Scalar::from_int(field, rng.gen_range(-2..=2))).collect()
}

/// A random element of the largest Hom space, with its degree.
fn random_graded_map(hom: &HomComplex, rng: &mut impl Rng) -> Result<GradedMap, ComplexError> {
    let degrees: Vec<i64> = hom.complex.dims().iter().filter(|(_, &d)| d > 0).map(|(&n, _)| n).collect();
    if degrees.is_empty() {
        return Ok(GradedMap::zero(0));
    }
    let n = degrees[rng.gen_range(0..degrees.len())];
    let v = random_vector(hom.complex.field(), hom.complex.dim(n), rng);
    hom.graded_map(n, &v)
}

fn pair(field: &FieldRef, order: u32, seed: u64) -> Result<(NComplex, NComplex), ComplexError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = random_ncomplex_in(field, order, Profile::Small, &mut rng)?.complex;
    let w = random_ncomplex_in(field, order, Profile::Small, &mut rng)?.complex;
    Ok((v, w))
}

fn witness(order: u32, seed: u64, r: Result<Option<Value>, ComplexError>) -> Option<Value> {
    match r {
        Ok(None) => None,
        Ok(Some(w)) => Some(json!({ "N": order, "seed": seed, "check": w })),
        Err(e) => Some(json!({ "N": order, "seed": seed, "check": error_witness(e) })),
    }
}

fn tensor_expansion_mismatch(v: &NComplex, w: &NComplex, q: &Scalar, rng: &mut impl Rng) -> Result<Option<Value>, ComplexError> {
    let t = q_tensor(v, w, q)?;
    let order = v.order();
    for (&a, &da) in v.dims() {
        for (&b, &db) in w.dims() {
            let x = random_vector(v.field(), da, rng);
            let y = random_vector(w.field(), db, rng);
            let elem = t.element(a, &x, b, &y);
            for n in 0..=order {
                let iterated = t.complex.power_map(a + b, n).apply(&elem);
                if iterated != tensor_power_expand(&t, v, w, (a, &x), (b, &y), n, q)? {
                    return Ok(Some(json!({ "a": a, "b": b, "n": n })));
                }
            }
        }
    }
    Ok(None)
}

fn hom_expansion_mismatch(
    v: &NComplex,
    w: &NComplex,
    q: &Scalar,
    form: HomExpansion,
    rng: &mut impl Rng,
) -> Result<Option<Value>, ComplexError> {
    let hom = q_hom(v, w, q, HomConvention::DegreeWeighted)?;
    for _ in 0..3 {
        let f = random_graded_map(&hom, rng)?;
        for n in 0..=v.order() {
            let iterated = hom.apply_power(&f, n)?;
            let expanded = hom_power_expand(&f, v, w, n, q, form)?;
            if hom.vector(&iterated)? != hom.vector(&expanded)? {
                return Ok(Some(json!({ "degree": f.degree, "n": n })));
            }
        }
    }
    Ok(None)
}

/// `d(P(f, g)) - P(df, g) - q^m P(f, dg)` for random `f : C → D`, `g : D → E`.
fn composition_leibniz_mismatch(c: &NComplex, d: &NComplex, e: &NComplex, q: &Scalar, rng: &mut impl Rng) -> Result<Option<Value>, ComplexError> {
    let conv = HomConvention::DegreeWeighted;
    let (cd, de, ce) = (q_hom(c, d, q, conv)?, q_hom(d, e, q, conv)?, q_hom(c, e, q, conv)?);
    for _ in 0..3 {
        let f = random_graded_map(&cd, rng)?;
        let g = random_graded_map(&de, rng)?;
        let lhs = hom_differential(&compose(&f, &g, c, d, e, q)?, c, e, q, conv)?;
        let df = hom_differential(&f, c, d, q, conv)?;
        let dg = hom_differential(&g, d, e, q, conv)?;
        let first = ce.vector(&compose(&df, &g, c, d, e, q)?)?;
        let second = ce.vector(&compose(&f, &dg, c, d, e, q)?)?;
        let weight = q.pow(f.degree)?;
        let rhs: Vec<Scalar> = first.iter().zip(&second).map(|(a, b)| a + &(&weight * b)).collect();
        if ce.vector(&lhs)? != rhs {
            return Ok(Some(json!({ "deg_f": f.degree, "deg_g": g.degree })));
        }
    }
    Ok(None)
}

/// A random combination of chain morphisms `c → c`.
fn random_endomorphism(c: &NComplex, q: &Scalar, rng: &mut impl Rng) -> Result<GradedMap, ComplexError> {
    let hom = q_hom(c, c, q, HomConvention::DegreeWeighted)?;
    let basis = hom.chain_morphisms()?;
    let dim = hom.complex.dim(0);
    let mut v = vec![Scalar::zero(c.field()); dim];
    for f in &basis {
        let coeff = Scalar::from_int(c.field(), rng.gen_range(-2..=2));
        for (x, y) in v.iter_mut().zip(hom.vector(f)?) {
            *x += &coeff * &y;
        }
    }
    hom.graded_map(0, &v)
}

fn null_homotopy_failure(c: &NComplex, e: &NComplex, q: &Scalar, rng: &mut impl Rng) -> Result<Option<Value>, ComplexError> {
    let hom = q_hom(c, e, q, HomConvention::DegreeWeighted)?;
    let top = c.order() as i64 - 1;
    let s = hom.graded_map(top, &random_vector(c.field(), hom.complex.dim(top), rng))?;
    let f = hom.apply_power(&s, c.order() - 1)?;
    if !hom.is_chain_morphism(&f)? {
        return Ok(Some(json!({ "error": "d^{N-1} s is not a chain morphism" })));
    }
    if let Some((&(p, i), _)) = induced_on_homology(&f, c, e)?.iter().find(|(_, m)| !m.is_zero()) {
        return Ok(Some(json!({ "nonzero_on": { "p": p, "i": i } })));
    }
    if hom.null_homotopy_certificate(&f)?.is_none() {
        return Ok(Some(json!({ "error": "no certificate for d^{N-1} s" })));
    }
    let g_src = random_endomorphism(c, q, rng)?;
    let g_tgt = random_endomorphism(e, q, rng)?;
    for (label, composite) in [("f∘g", compose(&g_src, &f, c, c, e, q)?), ("g∘f", compose(&f, &g_tgt, c, e, e, q)?)] {
        match hom.null_homotopy_certificate(&composite)? {
            Some(h) if hom.vector(&hom.apply_power(&h, c.order() - 1)?)? == hom.vector(&composite)? => {}
            _ => return Ok(Some(json!({ "composite": label }))),
        }
    }
    Ok(None)
}

pub fn run(config: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = operation_checks(config);
    out.extend(null_homotopy_checks(config));
    out
}

/// Validation of q-tensor and q-Hom, expansions of their powers and the
/// q-Leibniz rule of composition.
pub fn operation_checks(config: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let count = config.count(5, 20);
    for order in config.orders(&[2, 3, 4]).into_iter().filter(|&n| n >= 2) {
        let Ok(q) = root_of_unity(order) else { continue };
        let tag = format!("homops.pairs.N{order}");
        let seeds: Vec<u64> = (0..count).map(|k| config.instance_seed(&tag, k)).collect();
        out.push(group_record(
            format!("homops.tensor-order.N{order}"),
            "the q-tensor product of N-complexes is an N-complex",
            format!("N = {order}"),
            seeds.iter().map(|&s| {
                witness(order, s, pair(q.field(), order, s).and_then(|(v, w)| Ok(q_tensor(&v, &w, &q)?.complex.check_nilpotent().err().map(error_witness))))
            }),
        ));
        out.push(group_record(
            format!("homops.hom-order.N{order}"),
            "the q-Hom sequence with degree-weighted differential is an N-complex",
            format!("N = {order}"),
            seeds.iter().map(|&s| {
                witness(
                    order,
                    s,
                    pair(q.field(), order, s).and_then(|(v, w)| {
                        Ok(q_hom(&v, &w, &q, HomConvention::DegreeWeighted)?.complex.check_nilpotent().err().map(error_witness))
                    }),
                )
            }),
        ));
        if order >= 3 {
            let fails = seeds.iter().filter(|&&s| {
                pair(q.field(), order, s)
                    .and_then(|(v, w)| q_hom(&v, &w, &q, HomConvention::PositionWeighted))
                    .map(|h| h.complex.check_nilpotent().is_err())
                    .unwrap_or(false)
            });
            let n_fail = fails.count();
            out.push(CheckRecord::from_witness(
                format!("homops.position-weighted-control.N{order}"),
                "weighting the Hom differential by source position breaks d^N = 0",
                format!("N = {order}, {n_fail} of {count} instances fail validation"),
                (n_fail == 0).then(|| json!({ "error": "control unexpectedly passed" })),
            ));
        }
    }
    // expansions of powers of the differentials, at roots and a rational q
    let settings: Vec<(String, u32, Scalar)> = vec![
        ("z3".into(), 3, root_of_unity(3).expect("valid order")),
        ("z4".into(), 4, root_of_unity(4).expect("valid order")),
        ("2".into(), 3, Scalar::from_int(&make_field(1).expect("valid order"), 2)),
    ];
    for (label, order, q) in &settings {
        let tag = format!("homops.expansion.q{label}");
        let seeds: Vec<u64> = (0..count).map(|k| config.instance_seed(&tag, k)).collect();
        out.push(group_record(
            format!("homops.tensor-expansion.q{label}"),
            "d^n(v⊗w) = Σ_k q^{(n-k)a} [n k]_{q^{-1}} d^k v ⊗ d^{n-k} w",
            format!("q = {q}, n ≤ {order}"),
            seeds.iter().map(|&s| {
                let mut rng = ChaCha8Rng::seed_from_u64(s ^ 1);
                witness(*order, s, pair(q.field(), *order, s).and_then(|(v, w)| tensor_expansion_mismatch(&v, &w, q, &mut rng)))
            }),
        ));
        out.push(group_record(
            format!("homops.hom-expansion.q{label}"),
            "d^n f = Σ_k (-1)^{n-k} q^{-(n-k)a + C(n-k,2)} [n k]_q d^k f d^{n-k}",
            format!("q = {q}, n ≤ {order}"),
            seeds.iter().map(|&s| {
                let mut rng = ChaCha8Rng::seed_from_u64(s ^ 2);
                witness(
                    *order,
                    s,
                    pair(q.field(), *order, s).and_then(|(v, w)| hom_expansion_mismatch(&v, &w, q, HomExpansion::DegreeWeighted, &mut rng)),
                )
            }),
        ));
        let literal_fails = seeds
            .iter()
            .filter(|&&s| {
                let mut rng = ChaCha8Rng::seed_from_u64(s ^ 2);
                matches!(
                    pair(q.field(), *order, s).and_then(|(v, w)| hom_expansion_mismatch(&v, &w, q, HomExpansion::Uncorrected, &mut rng)),
                    Ok(Some(_))
                )
            })
            .count();
        out.push(CheckRecord::from_witness(
            format!("homops.hom-expansion-control.q{label}"),
            "the expansion with weight q^{(n-k)a} and [n k]_{q^{-1}} disagrees with iteration",
            format!("q = {q}, {literal_fails} of {count} instances disagree"),
            (literal_fails == 0).then(|| json!({ "error": "control unexpectedly passed" })),
        ));
        out.push(group_record(
            format!("homops.composition-leibniz.q{label}"),
            "d(P(f, g)) = P(df, g) + q^{deg f} P(f, dg) for P(f, g) = q^{mn} g∘f",
            format!("q = {q}"),
            seeds.iter().map(|&s| {
                let mut rng = ChaCha8Rng::seed_from_u64(s ^ 3);
                let r = pair(q.field(), *order, s).and_then(|(c, d)| {
                    let e = random_ncomplex_in(q.field(), *order, Profile::Small, &mut rng)?.complex;
                    composition_leibniz_mismatch(&c, &d, &e, q, &mut rng)
                });
                witness(*order, s, r)
            }),
        ));
    }
    out
}

/// Null-homotopic morphisms: zero on homology and closed under composition.
pub fn null_homotopy_checks(config: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let null_count = config.count(10, 25);
    for order in config.orders(&[3]).into_iter().filter(|&n| n >= 2) {
        let Ok(q) = root_of_unity(order) else { continue };
        let tag = format!("homops.null.N{order}");
        out.push(group_record(
            format!("homops.null-homotopic.N{order}"),
            "null-homotopic morphisms induce zero on homology and form a two-sided ideal",
            format!("N = {order}"),
            (0..null_count).map(|k| {
                let s = config.instance_seed(&tag, k);
                let mut rng = ChaCha8Rng::seed_from_u64(s ^ 4);
                witness(order, s, pair(q.field(), order, s).and_then(|(c, e)| null_homotopy_failure(&c, &e, &q, &mut rng)))
            }),
        ));
        let s = config.instance_seed(&tag, usize::MAX);
        let r = pair(q.field(), order, s).and_then(|(c, _)| {
            let hom = q_hom(&c, &c, &q, HomConvention::DegreeWeighted)?;
            Ok(hom.null_homotopy_certificate(&GradedMap::identity(&c))?.map(|_| json!({ "error": "identity has a certificate" })))
        });
        out.push(CheckRecord::from_witness(
            format!("homops.identity-not-null.N{order}"),
            "the identity of a complex with nonzero homology is not null-homotopic",
            format!("N = {order}, seed {s}"),
            witness(order, s, r),
        ));
    }
    out
}
