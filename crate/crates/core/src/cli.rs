//! Command-line interface: argument parsing and command dispatch.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage,
//! I/O or parse errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::complex::{root_of_unity, ComplexError, ComplexRepr, NComplex};
use crate::cyclo::Scalar;
use crate::delta::{builtin, DeltaSet, DeltaSetRepr};
use crate::forms::{leibniz_defect, random_form, truncate_to_ncomplex, vanishing_table, FormRepr, QForm};
use crate::gauge::{chern_form, cs_density, divergence_defect, polynomial_inverse, random_unipotent, ConnectionRepr, DivergenceConstant, MatrixForm, QConnection};
use crate::generate::{random_exact, random_invertible, random_ncomplex, Profile};
use crate::homology::{homology, total_homology};
use crate::homops::{q_hom, q_tensor, HomConvention};
use crate::quantum::{
    coaction_failure, coaction_relation_vectors, comultiplication_failure, listed_relation_vectors, relations_from_covariance, CoactionSide,
};
use crate::suites::{run_suite, Suite, SuiteConfig};

#[derive(Debug, Parser)]
#[command(name = "qhomalg", version, about = "Exact homological algebra of N-complexes at roots of unity")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Instance size preset: small or medium.
    #[arg(long, global = true, default_value = "small")]
    pub profile: Profile,
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Order N of the root of unity q.
    #[arg(long = "q-order", global = true)]
    pub q_order: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HomOp {
    Tensor,
    Hom,
    Nullhomotopy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DerhamCheck {
    Leibniz,
    Dpower,
    Vanishing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantumCheck {
    Relations,
    Comul,
    Coaction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Complex,
    Form,
    Connection,
    Deltaset,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a complex file describes an N-complex.
    Verify { file: PathBuf },
    /// Dimensions of the homology _pH_i.
    Homology {
        file: PathBuf,
        #[arg(long)]
        p: Option<u32>,
    },
    /// Total homology and its validation as an (N-1)-complex.
    Total { file: PathBuf },
    /// Poincaré polynomial and its value at ζ_N.
    Poincare { file: PathBuf },
    /// Chain N-complex of a Δ-set.
    Simplicial {
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// q-tensor product, q-Hom or null-homotopy test on two complexes.
    Homtest {
        #[arg(long, value_enum)]
        op: HomOp,
        #[arg(long = "in", num_args = 2, required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Checks on the q-de Rham complex.
    Derham {
        #[arg(long, default_value_t = 2)]
        vars: usize,
        #[arg(long = "max-degree", default_value_t = 4)]
        max_degree: u32,
        #[arg(long, value_enum)]
        check: DerhamCheck,
    },
    /// Degree-2 checks on quantum matrix relations.
    Quantum {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum)]
        check: QuantumCheck,
    },
    /// N-curvature of a connection.
    Curvature { file: PathBuf },
    /// Gauge covariance of the curvature.
    GaugeCheck {
        file: PathBuf,
        /// `unipotent-seed S` or `constant-seed S`.
        #[arg(long, num_args = 2, value_names = ["KIND", "SEED"])]
        g: Vec<String>,
    },
    /// Chern form tr(F^p) and its closedness.
    Chern {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        p: u32,
    },
    /// Chern–Simons density and the divergence identity.
    Cs { file: PathBuf },
    /// A seeded random N-complex with known homology.
    Random {
        #[arg(long = "N")]
        order: u32,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Run {
        suite: Suite,
        #[arg(long = "N")]
        order: Option<u32>,
        #[arg(long)]
        instances: Option<usize>,
    },
    /// Canonical re-serialization of a file.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Kind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Human-readable summary of a file.
    Describe { file: PathBuf },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
}

/// Result of a command: printable text, optional structured output, and
/// whether every check passed.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub passed: bool,
}

impl Outcome {
    fn new(text: String, json: Value, passed: bool) -> Self {
        Outcome { text, json, passed }
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse { path: path.display().to_string(), message: e.to_string() })
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path, value: Value) -> Result<T, CliError> {
    serde_json::from_value(value).map_err(|e| CliError::Parse { path: path.display().to_string(), message: e.to_string() })
}

fn parse_error(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Parse { path: path.display().to_string(), message: e.to_string() }
}

/// Loads a complex, separating parse errors from a failed nilpotency check.
fn load_complex_unchecked(path: &Path) -> Result<(NComplex, Result<(), ComplexError>), CliError> {
    let repr: ComplexRepr = parse(path, read_json(path)?)?;
    let c = NComplex::from_repr_unchecked(&repr).map_err(|e| parse_error(path, e))?;
    let valid = c.check_nilpotent();
    Ok((c, valid))
}

fn load_complex(path: &Path) -> Result<NComplex, CliError> {
    let repr: ComplexRepr = parse(path, read_json(path)?)?;
    NComplex::from_repr(&repr).map_err(|e| parse_error(path, e))
}

fn load_connection(path: &Path) -> Result<QConnection, CliError> {
    let repr: ConnectionRepr = parse(path, read_json(path)?)?;
    QConnection::from_repr(&repr).map_err(|e| parse_error(path, e))
}

fn q_for(order: u32, cli: &Cli) -> Result<Scalar, CliError> {
    let n = cli.q_order.unwrap_or(order);
    root_of_unity(n).map_err(|e| CliError::Usage(e.to_string()))
}

fn homology_table(c: &NComplex, levels: &[u32]) -> Result<(String, Value), ComplexError> {
    let mut text = String::new();
    let mut rows = Vec::new();
    let Some((lo, hi)) = c.support() else { return Ok(("empty complex\n".into(), json!([]))) };
    text.push_str(&format!("{:>4}", "p\\i"));
    for i in lo..=hi {
        text.push_str(&format!("{i:>5}"));
    }
    text.push('\n');
    for &p in levels {
        text.push_str(&format!("{p:>4}"));
        let mut dims = Vec::new();
        for i in lo..=hi {
            let d = homology(c, p, i)?.dim();
            text.push_str(&format!("{d:>5}"));
            dims.push(json!({ "i": i, "dim": d }));
        }
        text.push('\n');
        rows.push(json!({ "p": p, "cells": dims }));
    }
    Ok((text, json!(rows)))
}

fn canonical(value: &impl serde::Serialize) -> String {
    // serde_json::Value keeps object keys sorted
    let v = serde_json::to_value(value).expect("serializable");
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

fn write_or_return(out: &Option<PathBuf>, text: String) -> Result<String, CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(text),
    }
}

/// Recognizes the kind of a serialized object by its keys.
fn detect_kind(v: &Value) -> Option<Kind> {
    let obj = v.as_object()?;
    if obj.contains_key("degrees") {
        Some(Kind::Complex)
    } else if obj.contains_key("cells") {
        Some(Kind::Deltaset)
    } else if obj.contains_key("A") {
        Some(Kind::Connection)
    } else if obj.contains_key("terms") {
        Some(Kind::Form)
    } else {
        None
    }
}

fn convert(path: &Path, kind: Kind) -> Result<String, CliError> {
    let v = read_json(path)?;
    Ok(match kind {
        Kind::Complex => canonical(&load_complex(path)?.to_repr()),
        Kind::Form => {
            let repr: FormRepr = parse(path, v)?;
            canonical(&QForm::from_repr(&repr).map_err(|e| parse_error(path, e))?.to_repr())
        }
        Kind::Connection => canonical(&load_connection(path)?.to_repr()),
        Kind::Deltaset => {
            let repr: DeltaSetRepr = parse(path, v)?;
            canonical(&DeltaSet::from_repr(&repr).map_err(|e| parse_error(path, e))?.to_repr())
        }
    })
}

fn describe(path: &Path) -> Result<Outcome, CliError> {
    let v = read_json(path)?;
    let kind = detect_kind(&v).ok_or_else(|| parse_error(path, "unrecognized object: expected a complex, form, connection or Δ-set"))?;
    match kind {
        Kind::Complex => {
            let c = load_complex(path)?;
            let dims: Vec<String> = c.dims().iter().map(|(i, d)| format!("C_{i} = {d}")).collect();
            let levels: Vec<u32> = (1..=c.order()).collect();
            let (table, json_table) = homology_table(&c, &levels).map_err(|e| parse_error(path, e))?;
            let text = format!(
                "N-complex of order {} over Q(ζ_{})\nsupport {}\ndimensions: {}\nhomology _pH_i:\n{table}",
                c.order(),
                c.field().order(),
                c.support().map(|(lo, hi)| format!("{lo}..{hi}")).unwrap_or_else(|| "empty".into()),
                dims.join(", ")
            );
            let json = json!({ "kind": "complex", "N": c.order(), "dims": c.to_repr().degrees, "homology": json_table });
            Ok(Outcome::new(text, json, true))
        }
        Kind::Form => {
            let repr: FormRepr = parse(path, v)?;
            let f = QForm::from_repr(&repr).map_err(|e| parse_error(path, e))?;
            let mut table: BTreeMap<(usize, u32), usize> = BTreeMap::new();
            for g in f.gradings() {
                *table.entry(g).or_default() += 1;
            }
            let mut text = format!("form on {} variables with {} terms\nform degree, polynomial degree: terms\n", f.n_vars(), f.terms().len());
            for ((k, j), c) in &table {
                text.push_str(&format!("  {k}, {j}: {c}\n"));
            }
            let json = json!({ "kind": "form", "n": f.n_vars(), "gradings": table.iter().map(|((k, j), c)| json!({ "form_degree": k, "poly_degree": j, "terms": c })).collect::<Vec<_>>() });
            Ok(Outcome::new(text, json, true))
        }
        Kind::Connection => {
            let c = load_connection(path)?;
            let text = format!("connection of rank {} on {} variables at N = {}\n", c.rank(), c.n_vars(), c.order());
            Ok(Outcome::new(text, json!({ "kind": "connection", "r": c.rank(), "n": c.n_vars(), "N": c.order() }), true))
        }
        Kind::Deltaset => {
            let repr: DeltaSetRepr = parse(path, v)?;
            let x = DeltaSet::from_repr(&repr).map_err(|e| parse_error(path, e))?;
            let counts: Vec<String> = x.counts().iter().map(|(n, c)| format!("{n}: {c}")).collect();
            let dim = x.top_dim().map(|d| d.to_string()).unwrap_or_else(|| "empty".into());
            let text = format!("Δ-set of dimension {dim}\ncells per dimension: {}\n", counts.join(", "));
            Ok(Outcome::new(text, json!({ "kind": "deltaset", "counts": x.counts() }), true))
        }
    }
}

fn run_command(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Verify { file } => {
            let (c, result) = load_complex_unchecked(file)?;
            Ok(match result {
                Ok(()) => Outcome::new(
                    format!("valid {}-complex, total dimension {}\n", c.order(), c.total_dim()),
                    json!({ "valid": true, "N": c.order() }),
                    true,
                ),
                Err(e) => Outcome::new(format!("invalid: {e}\n"), json!({ "valid": false, "error": e.to_string() }), false),
            })
        }
        Command::Homology { file, p } => {
            let c = load_complex(file)?;
            let levels: Vec<u32> = match p {
                Some(p) => vec![*p],
                None => (1..=c.order()).collect(),
            };
            let (text, json) = homology_table(&c, &levels).map_err(|e| parse_error(file, e))?;
            Ok(Outcome::new(text, json, true))
        }
        Command::Total { file } => {
            let c = load_complex(file)?;
            let t = total_homology(&c).map_err(|e| parse_error(file, e))?;
            let valid = t.complex.check_nilpotent();
            let mut text = String::from("total degree: dimension\n");
            for (m, d) in t.dims_descending() {
                text.push_str(&format!("{m:>4}: {d}\n"));
            }
            let exact = if c.order() == 3 { Some(t.is_exact_sequence().map_err(|e| parse_error(file, e))?) } else { None };
            match &valid {
                Ok(()) => text.push_str(&format!("valid {}-complex\n", c.order() - 1)),
                Err(e) => text.push_str(&format!("not an {}-complex: {e}\n", c.order() - 1)),
            }
            if let Some(x) = exact {
                text.push_str(&format!("exact sequence: {x}\n"));
            }
            let json = json!({
                "dims": t.dims_descending().iter().map(|(m, d)| json!({ "m": m, "dim": d })).collect::<Vec<_>>(),
                "valid": valid.is_ok(),
                "exact": exact,
            });
            Ok(Outcome::new(text, json, valid.is_ok() && exact != Some(false)))
        }
        Command::Poincare { file } => {
            let c = load_complex(file)?;
            let value = c.poincare_at_root().map_err(|e| parse_error(file, e))?;
            let coeffs: Vec<String> = c.poincare().iter().filter(|(_, &v)| v > 0).map(|(i, v)| format!("{v} t^{i}")).collect();
            let text = format!("P(t) = {}\nP(ζ_{}) = {value}\n", if coeffs.is_empty() { "0".into() } else { coeffs.join(" + ") }, c.order());
            Ok(Outcome::new(text, json!({ "coefficients": c.poincare(), "value": value }), true))
        }
        Command::Simplicial { builtin: name, input, emit } => {
            let x = match (name, input) {
                (Some(name), None) => builtin(name).map_err(|e| CliError::Usage(e.to_string()))?,
                (None, Some(path)) => {
                    let repr: DeltaSetRepr = parse(path, read_json(path)?)?;
                    DeltaSet::from_repr(&repr).map_err(|e| parse_error(path, e))?
                }
                _ => return Err(CliError::Usage("give exactly one of --builtin or --in".into())),
            };
            let order = cli.q_order.ok_or_else(|| CliError::Usage("--q-order is required".into()))?;
            let q = q_for(order, cli)?;
            let c = x.chain_ncomplex(&q, Some(order)).map_err(|e| CliError::Usage(e.to_string()))?;
            let text = write_or_return(emit, canonical(&c.to_repr()))?;
            Ok(Outcome::new(text, serde_json::to_value(c.to_repr()).expect("serializable"), true))
        }
        Command::Homtest { op, inputs } => {
            let a = load_complex(&inputs[0])?;
            let b = load_complex(&inputs[1])?;
            let q = q_for(a.order(), cli)?;
            let usage = |e: ComplexError| CliError::Usage(e.to_string());
            match op {
                HomOp::Tensor => {
                    let t = q_tensor(&a, &b, &q).map_err(usage)?;
                    let valid = t.complex.check_nilpotent();
                    let text = format!("tensor dims {:?}\nvalid {}-complex: {}\n", t.complex.dims(), a.order(), valid.is_ok());
                    Ok(Outcome::new(text, json!({ "dims": t.complex.to_repr().degrees, "valid": valid.is_ok() }), valid.is_ok()))
                }
                HomOp::Hom => {
                    let h = q_hom(&a, &b, &q, HomConvention::DegreeWeighted).map_err(usage)?;
                    let valid = h.complex.check_nilpotent();
                    let text = format!("Hom dims {:?}\nvalid {}-complex: {}\n", h.complex.dims(), a.order(), valid.is_ok());
                    Ok(Outcome::new(text, json!({ "dims": h.complex.to_repr().degrees, "valid": valid.is_ok() }), valid.is_ok()))
                }
                HomOp::Nullhomotopy => {
                    let h = q_hom(&a, &b, &q, HomConvention::DegreeWeighted).map_err(usage)?;
                    let morphisms = h.chain_morphisms().map_err(usage)?;
                    let mut null = 0;
                    for f in &morphisms {
                        if h.null_homotopy_certificate(f).map_err(usage)?.is_some() {
                            null += 1;
                        }
                    }
                    let text = format!("chain morphism basis: {}\nnull-homotopic basis elements: {null}\n", morphisms.len());
                    Ok(Outcome::new(text, json!({ "chain_morphisms": morphisms.len(), "null_homotopic": null }), true))
                }
            }
        }
        Command::Derham { vars, max_degree, check } => {
            let order = cli.q_order.ok_or_else(|| CliError::Usage("--q-order is required".into()))?;
            let q = q_for(order, cli)?;
            match check {
                DerhamCheck::Leibniz => {
                    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                    let mut failures = Vec::new();
                    for k in 0..20 {
                        let u = random_form(q.field(), *vars, k % 3, 2, &mut rng);
                        let v = random_form(q.field(), *vars, (k / 3) % 3, 2, &mut rng);
                        let d = leibniz_defect(&u, &v, &q);
                        if !d.is_zero() {
                            failures.push(json!({ "u": u.to_string(), "v": v.to_string(), "defect": d.to_string() }));
                        }
                    }
                    let text = format!("q-Leibniz rule: {} of 20 random pairs fail\n{}", failures.len(), failures.first().map(|w| format!("first: {w}\n")).unwrap_or_default());
                    Ok(Outcome::new(text, json!({ "failures": failures }), failures.is_empty()))
                }
                DerhamCheck::Dpower => {
                    let mut text = String::new();
                    let mut ok = true;
                    for m in 0..=*max_degree {
                        let r = truncate_to_ncomplex(*vars, &q, order, m, true);
                        ok &= r.is_ok();
                        text.push_str(&format!("total degree {m}: d^{order} = 0 {}\n", if r.is_ok() { "holds" } else { "FAILS" }));
                    }
                    Ok(Outcome::new(text, json!({ "passed": ok }), ok))
                }
                DerhamCheck::Vanishing => {
                    let table = vanishing_table(*vars, &q, order, *max_degree).map_err(|e| CliError::Usage(e.to_string()))?;
                    let mut text = String::from("total  p  k  dim  expected-zero\n");
                    for c in &table {
                        text.push_str(&format!("{:>5} {:>2} {:>2} {:>4}  {}\n", c.total_degree, c.p, c.form_degree, c.dim, c.in_range));
                    }
                    let ok = table.iter().all(|c| !(c.in_range && c.total_degree >= 1 && c.dim != 0));
                    Ok(Outcome::new(text, serde_json::to_value(&table).expect("serializable"), ok))
                }
            }
        }
        Command::Quantum { n, check } => {
            let q = q_for(3, cli)?;
            let field = q.field();
            let derived_vectors = coaction_relation_vectors(*n, &q, CoactionSide::Columns);
            let derived = relations_from_covariance(*n, &q);
            let listed = listed_relation_vectors(*n, &q);
            let usage = |e: crate::linalg::LinalgError| CliError::Usage(e.to_string());
            let (text, json, ok) = match check {
                QuantumCheck::Relations => {
                    let sum = crate::linalg::Subspace::span(field, n.pow(4), &[derived_vectors.clone(), listed.clone()].concat());
                    let listed_dim = crate::linalg::Subspace::span(field, n.pow(4), &listed).dim();
                    let equal = sum.dim() == derived.dim() && sum.dim() == listed_dim;
                    (
                        format!("covariance span dim {}\nlisted span dim {listed_dim}\nsum dim {}\nspans equal: {equal}\n", derived.dim(), sum.dim()),
                        json!({ "covariance_dim": derived.dim(), "listed_dim": listed_dim, "sum_dim": sum.dim(), "equal": equal }),
                        equal,
                    )
                }
                QuantumCheck::Comul => {
                    let a = comultiplication_failure(*n, &derived_vectors, field).map_err(usage)?;
                    let b = comultiplication_failure(*n, &listed, field).map_err(usage)?;
                    (
                        format!("covariance span dim {}\ncovariance relations: {}\nlisted relations: {}\n", derived.dim(), pass(a.is_none()), pass(b.is_none())),
                        json!({ "covariance_dim": derived.dim(), "covariance": a.is_none(), "listed": b.is_none() }),
                        a.is_none(),
                    )
                }
                QuantumCheck::Coaction => {
                    let cols = coaction_failure(*n, &q, &derived, CoactionSide::Columns).is_none();
                    let rows = coaction_failure(*n, &q, &derived, CoactionSide::RowsOnForms).is_none();
                    (
                        format!("covariance span dim {}\ncoaction by columns: {}\ntransposed control fails: {}\n", derived.dim(), pass(cols), pass(!rows)),
                        json!({ "covariance_dim": derived.dim(), "columns": cols, "transposed": rows }),
                        cols && !rows,
                    )
                }
            };
            Ok(Outcome::new(text, json, ok))
        }
        Command::Curvature { file } => {
            let c = load_connection(file)?;
            match c.curvature() {
                Ok(f) => {
                    let text = format!("curvature:\n{}", matrix_text(&f));
                    Ok(Outcome::new(text, json!({ "curvature": matrix_json(&f) }), true))
                }
                Err(e) => {
                    let frame = c.frame_curvature();
                    let text = format!("{e}\n∇^N on the constant frame:\n{}", matrix_text(&frame));
                    Ok(Outcome::new(text, json!({ "error": e.to_string(), "frame": matrix_json(&frame) }), false))
                }
            }
        }
        Command::GaugeCheck { file, g } => {
            let c = load_connection(file)?;
            let seed: u64 = g.get(1).and_then(|s| s.parse().ok()).ok_or_else(|| CliError::Usage("--g expects KIND SEED".into()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = c.q().clone();
            let gauge = match g[0].as_str() {
                "unipotent-seed" => random_unipotent(q.field(), c.n_vars(), c.rank(), &mut rng),
                "constant-seed" => MatrixForm::from_matrix(&random_invertible(q.field(), c.rank(), &mut rng), c.n_vars()),
                other => return Err(CliError::Usage(format!("unknown gauge kind {other:?}"))),
            };
            let g_inv = polynomial_inverse(&gauge, &q).map_err(|e| CliError::Usage(e.to_string()))?;
            let t = c.gauge_transform(&gauge).map_err(|e| CliError::Usage(e.to_string()))?;
            let lhs = t.frame_curvature();
            let rhs = g_inv.mul(&c.frame_curvature(), &q).mul(&gauge, &q);
            let ok = lhs == rhs;
            let text = format!("F of the transformed connection equals g^-1 F g: {}\n", pass(ok));
            Ok(Outcome::new(text, json!({ "covariant": ok, "transformed": t.to_repr() }), ok))
        }
        Command::Chern { file, p } => {
            let c = load_connection(file)?;
            let (f, note) = match c.curvature() {
                Ok(f) => (f, None),
                Err(e) => (c.frame_curvature(), Some(e.to_string())),
            };
            let (form, d) = chern_form(&f, *p, c.q());
            let mut text = format!("tr(F^{p}) = {form}\nclosed: {}\n", pass(d.is_zero()));
            if let Some(n) = &note {
                text.push_str(&format!("note: {n}; the frame curvature was used\n"));
            }
            Ok(Outcome::new(text, json!({ "form": form.to_repr(), "closed": d.is_zero(), "note": note }), d.is_zero()))
        }
        Command::Cs { file } => {
            let c = load_connection(file)?;
            let usage = |e: crate::gauge::GaugeError| CliError::Usage(e.to_string());
            let density = cs_density(c.a(), c.q()).map_err(usage)?;
            let literal = divergence_defect(c.a(), c.q(), DivergenceConstant::Literal).map_err(usage)?.is_zero();
            let corrected = divergence_defect(c.a(), c.q(), DivergenceConstant::Corrected).map_err(usage)?.is_zero();
            let text = format!(
                "Chern–Simons density: {density}\ndivergence identity (unit constant): {}\ndivergence identity (constant 1+q): {}\n",
                pass(literal),
                pass(corrected)
            );
            Ok(Outcome::new(text, json!({ "density": density.to_repr(), "literal": literal, "corrected": corrected }), corrected))
        }
        Command::Random { order, exact, out } => {
            let g = if *exact { random_exact(*order, cli.profile, cli.seed) } else { random_ncomplex(*order, cli.profile, cli.seed) }
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let text = write_or_return(out, canonical(&g.complex.to_repr()))?;
            Ok(Outcome::new(text, serde_json::to_value(g.complex.to_repr()).expect("serializable"), true))
        }
        Command::Run { suite, order, instances } => {
            let config = SuiteConfig { seed: cli.seed, profile: cli.profile, order: order.or(cli.q_order), instances: *instances };
            let report = run_suite(*suite, &config);
            let passed = report.all_passed();
            Ok(Outcome::new(format!("{report}\n"), serde_json::to_value(&report).expect("serializable"), passed))
        }
        Command::Convert { file, to, out } => {
            let text = write_or_return(out, convert(file, *to)?)?;
            Ok(Outcome::new(text.clone(), Value::String(text), true))
        }
        Command::Describe { file } => describe(file),
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn matrix_text(m: &MatrixForm) -> String {
    let r = m.rank();
    let mut s = String::new();
    for a in 0..r {
        for b in 0..r {
            s.push_str(&format!("  [{}][{}] = {}\n", a + 1, b + 1, m.get(a, b)));
        }
    }
    s
}

fn matrix_json(m: &MatrixForm) -> Value {
    let r = m.rank();
    json!((0..r).map(|a| (0..r).map(|b| m.get(a, b).to_repr()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// Parses `args`, runs the command, writes its output and returns the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut impl std::io::Write, err: &mut impl std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(if code == 0 { out as &mut dyn std::io::Write } else { err as &mut dyn std::io::Write }, "{e}");
            return code;
        }
    };
    match run_command(&cli) {
        Ok(outcome) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&outcome.json).expect("serializable") + "\n"
            } else {
                outcome.text
            };
            let _ = out.write_all(body.as_bytes());
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
