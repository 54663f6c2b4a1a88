//! Homology of N-complexes: total homology, exact sequences of a map or a
//! pair of maps, and the Poincaré polynomial at the root.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{error_witness, group_record, CheckRecord, SuiteConfig};
use crate::complex::{elementary_chain, ComplexError, NComplex};
use crate::cyclo::{make_field, FieldRef, Scalar};
use crate::generate::{random_exact, random_invertible, random_ncomplex, Generated};
use crate::homology::{homology_diagram, six_term, six_term_dims, total_from_diagram, total_homology, HomologyDiagram, TotalHomology};
use crate::linalg::Matrix;

fn replay(order: u32, seed: u64) -> Value {
    json!({ "N": order, "seed": seed, "generator": "random_ncomplex" })
}

fn with_replay(order: u32, seed: u64, extra: Value) -> Value {
    let mut w = replay(order, seed);
    if let (Some(w), Value::Object(extra)) = (w.as_object_mut(), extra) {
        w.extend(extra);
    }
    w
}

/// A generated complex with its homology computed once.
struct Analyzed {
    generated: Generated,
    diagram: HomologyDiagram,
    total: TotalHomology,
}

fn analyze(generated: Generated) -> Result<Analyzed, ComplexError> {
    let diagram = homology_diagram(&generated.complex)?;
    let total = total_from_diagram(&generated.complex, &diagram)?;
    Ok(Analyzed { generated, diagram, total })
}

fn oracle_mismatch(a: &Analyzed) -> Option<Value> {
    let g = &a.generated;
    let (lo, hi) = g.complex.support()?;
    for p in 1..=g.complex.order() {
        for i in lo..=hi {
            let got = a.diagram.dim(p, i);
            let expected = g.expected_homology_dim(p, i);
            if got != expected {
                return Some(json!({ "p": p, "i": i, "dim": got, "expected": expected }));
            }
        }
    }
    None
}

/// Some level `p < N` without a nonzero cell although some cell is nonzero.
fn level_gap(a: &Analyzed) -> Option<Value> {
    let c = &a.generated.complex;
    let (lo, hi) = c.support()?;
    let n = c.order();
    let nonzero: Vec<bool> = (0..n).map(|p| p > 0 && (lo..=hi).any(|i| a.diagram.dim(p, i) != 0)).collect();
    if !nonzero.iter().any(|&x| x) {
        return None;
    }
    (1..n).find(|&p| !nonzero[p as usize]).map(|p| json!({ "empty_level": p }))
}

fn matrix_of_rank(field: &FieldRef, rows: usize, cols: usize, rank: usize, rng: &mut impl Rng) -> Matrix {
    let core = Matrix::from_fn(field, rows, cols, |r, c| {
        if r == c && r < rank {
            Scalar::one(field)
        } else {
            Scalar::zero(field)
        }
    });
    random_invertible(field, rows, rng).mul(&core).mul(&random_invertible(field, cols, rng))
}

fn random_map(field: &FieldRef, rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    let rank = rng.gen_range(0..=rows.min(cols));
    matrix_of_rank(field, rows, cols, rank, rng)
}

fn two_term_mismatch(f: &Matrix) -> Result<Option<Value>, ComplexError> {
    let field = f.field();
    let c = NComplex::build(field, 3, [(1, f.cols()), (0, f.rows())].into(), [(1, f.clone())].into())?;
    let total = total_homology(&c)?;
    let rank = f.rank();
    let expected = [f.cols() - rank, f.cols(), f.rows(), f.rows() - rank];
    let got: Vec<usize> = (-2..=1).rev().map(|m| total.complex.dim(m)).collect();
    if got != expected {
        return Ok(Some(json!({ "dims": got, "expected": expected })));
    }
    if !total.is_exact_sequence()? {
        return Ok(Some(json!({ "error": "sequence is not exact" })));
    }
    Ok(None)
}

fn six_term_mismatch(f: &Matrix, g: &Matrix) -> Result<Option<Value>, ComplexError> {
    let total = six_term(f, g)?;
    let gf = g.mul(f);
    let (rf, rg, rgf) = (f.rank(), g.rank(), gf.rank());
    let expected = [f.cols() - rf, f.cols() - rgf, g.cols() - rg, f.rows() - rf, g.rows() - rgf, g.rows() - rg];
    let got = six_term_dims(&total);
    if got != expected {
        return Ok(Some(json!({ "dims": got, "expected": expected })));
    }
    if !total.is_exact_sequence()? {
        return Ok(Some(json!({ "error": "sequence is not exact" })));
    }
    Ok(None)
}

pub fn run(config: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = total_checks(config);
    out.extend(poincare_checks(config));
    out.extend(sequence_checks(config));
    out
}

/// Homology of random N-complexes against their construction, the total
/// homology and the nonvanishing of every level.
pub fn total_checks(config: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let count = config.count(20, 100);
    for order in config.orders(&[3, 4, 5]).into_iter().filter(|&n| n >= 2) {
        let tag = format!("ncomplex.random.N{order}");
        let instances: Vec<(u64, Result<Analyzed, ComplexError>)> = (0..count)
            .map(|k| {
                let seed = config.instance_seed(&tag, k);
                (seed, random_ncomplex(order, config.profile, seed).and_then(analyze))
            })
            .collect();
        let per_instance = |f: &dyn Fn(&Analyzed) -> Result<Option<Value>, ComplexError>| -> Vec<Option<Value>> {
            instances
                .iter()
                .map(|(seed, a)| match a.as_ref().map_err(|e| e.clone()).and_then(f) {
                    Ok(None) => None,
                    Ok(Some(w)) => Some(with_replay(order, *seed, w)),
                    Err(e) => Some(with_replay(order, *seed, error_witness(e))),
                })
                .collect()
        };
        out.push(group_record(
            format!("ncomplex.homology-oracle.N{order}"),
            "dim _pH_i matches the decomposition into truncated chains",
            format!("N = {order}"),
            per_instance(&|a| Ok(oracle_mismatch(a))),
        ));
        out.push(group_record(
            format!("ncomplex.total-order.N{order}"),
            "total homology with D = i_* + d_* is an (N-1)-complex",
            format!("N = {order}"),
            per_instance(&|a| Ok(a.total.complex.check_nilpotent().err().map(error_witness))),
        ));
        if order == 3 {
            out.push(group_record(
                "ncomplex.total-exact.N3".into(),
                "for N = 3 the total homology is an exact sequence",
                "N = 3".into(),
                per_instance(&|a| Ok((!a.total.is_exact_sequence()?).then(|| json!({ "error": "not exact" })))),
            ));
        }
        out.push(group_record(
            format!("ncomplex.level-nonvanishing.N{order}"),
            "if some _rH_i ≠ 0 then every level p < N has a nonzero cell",
            format!("N = {order}"),
            per_instance(&|a| Ok(level_gap(a))),
        ));
    }
    out
}

/// The Poincaré polynomial at ζ_N on exact and on truncated complexes.
pub fn poincare_checks(config: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let exact_count = config.count(20, 100);
    for order in config.orders(&[2, 3, 4, 5]).into_iter().filter(|&n| n >= 2) {
        let tag = format!("ncomplex.exact.N{order}");
        out.push(group_record(
            format!("ncomplex.poincare-exact.N{order}"),
            "the Poincaré polynomial of an N-exact complex vanishes at ζ_N",
            format!("N = {order}"),
            (0..exact_count).map(|k| {
                let seed = config.instance_seed(&tag, k);
                let result = random_exact(order, config.profile, seed).and_then(|g| g.complex.poincare_at_root());
                match result {
                    Ok(v) if v.is_zero() => None,
                    Ok(v) => Some(json!({ "N": order, "seed": seed, "generator": "random_exact", "value": v.to_string() })),
                    Err(e) => Some(json!({ "N": order, "seed": seed, "error": e.to_string() })),
                }
            }),
        ));
        let field = make_field(order).expect("valid order");
        out.push(group_record(
            format!("ncomplex.poincare-truncated.N{order}"),
            "a single chain shorter than N has nonzero Poincaré polynomial at ζ_N",
            format!("N = {order}, lengths 1..N-1, tops 0..3"),
            (1..order).flat_map(|len| (0..4).map(move |top| (len, top))).map(|(len, top)| {
                let c = elementary_chain(&field, order, top + len as i64 - 1, len, 1).expect("valid chain");
                match c.poincare_at_root() {
                    Ok(v) if !v.is_zero() => None,
                    Ok(_) => Some(json!({ "length": len, "top": top })),
                    Err(e) => Some(error_witness(e)),
                }
            }),
        ));
    }
    out
}

/// The two-term and six-term sequences of random maps at N = 3.
pub fn sequence_checks(config: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let field = make_field(3).expect("valid order");
    let pairs = config.count(50, 50);
    let mut rng = ChaCha8Rng::seed_from_u64(config.instance_seed("ncomplex.maps", 0));
    let mut maps = Vec::new();
    for _ in 0..pairs {
        let (x, y, z) = (rng.gen_range(0..=4), rng.gen_range(0..=4), rng.gen_range(0..=4));
        maps.push((random_map(&field, y, x, &mut rng), random_map(&field, z, y, &mut rng)));
    }
    let as_witness = |r: Result<Option<Value>, ComplexError>, f: &Matrix, g: Option<&Matrix>| -> Option<Value> {
        let w = match r {
            Ok(None) => return None,
            Ok(Some(w)) => w,
            Err(e) => error_witness(e),
        };
        Some(json!({ "check": w, "f": f.to_repr(), "g": g.map(Matrix::to_repr) }))
    };
    out.push(group_record(
        "ncomplex.two-term".into(),
        "0 → Ker f → X → Y → Coker f → 0 is the total homology of X → Y at N = 3",
        "random maps of all ranks, dims ≤ 4".into(),
        maps.iter().map(|(f, _)| as_witness(two_term_mismatch(f), f, None)),
    ));
    out.push(group_record(
        "ncomplex.six-term".into(),
        "Ker f, Ker gf, Ker g, Coker f, Coker gf, Coker g form an exact sequence",
        "random pairs of all ranks, dims ≤ 4".into(),
        maps.iter().map(|(f, g)| as_witness(six_term_mismatch(f, g), f, Some(g))),
    ));
    out
}
