//! Semi-simplicial sets (face maps only) and their q-differential `d_q = Σ q^i ∂_i`.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, NComplex};
use crate::cyclo::Scalar;
use crate::linalg::Matrix;
use crate::qnum::q_factorial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeltaError {
    #[error("face identity d_{i} d_{j} = d_{} d_{i} fails in dimension {n} on cell {cell:?}", .j - 1)]
    SimplicialIdentityViolation { n: usize, i: usize, j: usize, cell: String },
    #[error("face map d_{i} on dimension {n} is {problem}")]
    BadFaceMap { n: usize, i: usize, problem: String },
    #[error("duplicate cell {0:?}")]
    DuplicateCell(String),
    #[error("q must satisfy q^{order} = 1 and q != 1")]
    NotARootOfUnity { order: u32 },
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A finite semi-simplicial set with validated face maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSet {
    cells: BTreeMap<usize, Vec<String>>,
    /// `faces[&(n, i)][k]` is the index in `cells[n-1]` of `∂_i` of the `k`-th n-cell.
    faces: BTreeMap<(usize, usize), Vec<usize>>,
}

/// Serialized form:
/// `{"cells": {"0": [...], ...}, "faces": [{"n", "i", "map": {cell: face}}...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaSetRepr {
    pub cells: BTreeMap<usize, Vec<String>>,
    pub faces: Vec<FaceRepr>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRepr {
    pub n: usize,
    pub i: usize,
    pub map: BTreeMap<String, String>,
}

impl DeltaSet {
    /// Builds from cell lists and face maps given by cell names, checking
    /// that every face map is total and that `∂_i ∂_j = ∂_{j-1} ∂_i` for `i < j`.
    pub fn build(cells: BTreeMap<usize, Vec<String>>, faces: &[FaceRepr]) -> Result<Self, DeltaError> {
        let cells: BTreeMap<usize, Vec<String>> = cells.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        let mut index: BTreeMap<(usize, &str), usize> = BTreeMap::new();
        for (&n, list) in &cells {
            for (k, c) in list.iter().enumerate() {
                if index.insert((n, c.as_str()), k).is_some() {
                    return Err(DeltaError::DuplicateCell(c.clone()));
                }
            }
        }
        let mut face_maps = BTreeMap::new();
        for f in faces {
            let bad = |problem: String| DeltaError::BadFaceMap { n: f.n, i: f.i, problem };
            if f.n == 0 || f.i > f.n {
                return Err(bad("out of range".into()));
            }
            let Some(source) = cells.get(&f.n) else {
                if f.map.is_empty() {
                    continue;
                }
                return Err(bad("defined on a dimension without cells".into()));
            };
            let mut map = Vec::with_capacity(source.len());
            for c in source {
                let image = f.map.get(c).ok_or_else(|| bad(format!("undefined on {c:?}")))?;
                let k = index.get(&(f.n - 1, image.as_str())).ok_or_else(|| bad(format!("sends {c:?} to unknown cell {image:?}")))?;
                map.push(*k);
            }
            if f.map.len() != source.len() {
                return Err(bad("defined on cells of the wrong dimension".into()));
            }
            if face_maps.insert((f.n, f.i), map).is_some() {
                return Err(bad("given twice".into()));
            }
        }
        for &n in cells.keys() {
            for i in 0..=n {
                if n > 0 && !face_maps.contains_key(&(n, i)) {
                    return Err(DeltaError::BadFaceMap { n, i, problem: "missing".into() });
                }
            }
        }
        let x = DeltaSet { cells, faces: face_maps };
        x.check_identities()?;
        Ok(x)
    }

    fn check_identities(&self) -> Result<(), DeltaError> {
        for (&n, list) in &self.cells {
            if n < 2 {
                continue;
            }
            for j in 1..=n {
                for i in 0..j {
                    for (k, name) in list.iter().enumerate() {
                        let lhs = self.faces[&(n - 1, i)][self.faces[&(n, j)][k]];
                        let rhs = self.faces[&(n - 1, j - 1)][self.faces[&(n, i)][k]];
                        if lhs != rhs {
                            return Err(DeltaError::SimplicialIdentityViolation { n, i, j, cell: name.clone() });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.cells.keys().next_back().copied()
    }

    pub fn cells(&self, n: usize) -> &[String] {
        self.cells.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn cell_index(&self, n: usize, name: &str) -> Option<usize> {
        self.cells(n).iter().position(|c| c == name)
    }

    /// `∂_i` of the `k`-th n-cell, as an index into the (n-1)-cells.
    pub fn face(&self, n: usize, i: usize, k: usize) -> usize {
        self.faces[&(n, i)][k]
    }

    pub fn counts(&self) -> BTreeMap<usize, usize> {
        self.cells.iter().map(|(&n, v)| (n, v.len())).collect()
    }

    /// The matrix of `d_q` from n-cells to (n-1)-cells.
    pub fn dq_matrix(&self, n: usize, q: &Scalar) -> Result<Matrix, DeltaError> {
        let field = q.field();
        let rows = if n == 0 { 0 } else { self.cells(n - 1).len() };
        let mut m = Matrix::zeros(field, rows, self.cells(n).len());
        if n == 0 {
            return Ok(m);
        }
        let mut power = Scalar::one(field);
        for i in 0..=n {
            for k in 0..self.cells(n).len() {
                let r = self.face(n, i, k);
                m[(r, k)] += &power;
            }
            power = &power * q;
        }
        Ok(m)
    }

    /// The chain sequence `(C[X], d_q)` with `C_n` spanned by the n-cells.
    ///
    /// With `claimed_order = Some(N)` this requires `q^N = 1`, `q ≠ 1` and
    /// validates `d_q^N = 0`; otherwise the order is chosen larger than the
    /// number of nonzero degrees, so no relation is asserted.
    pub fn chain_ncomplex(&self, q: &Scalar, claimed_order: Option<u32>) -> Result<NComplex, DeltaError> {
        let field = q.field();
        let dims: BTreeMap<i64, usize> = self.counts().into_iter().map(|(n, c)| (n as i64, c)).collect();
        let mut diffs = BTreeMap::new();
        for &n in self.cells.keys() {
            if n > 0 {
                diffs.insert(n as i64, self.dq_matrix(n, q)?);
            }
        }
        match claimed_order {
            Some(order) => {
                if q.is_one() || !q.pow(order as i64).map_err(ComplexError::from)?.is_one() {
                    return Err(DeltaError::NotARootOfUnity { order });
                }
                Ok(NComplex::build(field, order, dims, diffs)?)
            }
            None => {
                let order = self.top_dim().map_or(1, |t| t as u32 + 2);
                Ok(NComplex::assemble(field, order, dims, diffs)?)
            }
        }
    }

    /// `[k!]_q Σ q^{i_1+…+i_k} ∂_{i_1} … ∂_{i_k}(x)` over `i_1 ≥ … ≥ i_k`,
    /// where `∂_{i_k}` is applied first and each index is bounded by the
    /// dimension of the cell it acts on. Returned as coordinates on the
    /// (n-k)-cells.
    pub fn dq_power_oracle(&self, n: usize, cell: usize, k: usize, q: &Scalar) -> Vec<Scalar> {
        let field = q.field();
        assert!(k <= n, "power exceeds the cell dimension");
        let mut out = vec![Scalar::zero(field); self.cells(n - k).len()];
        // state: (current dim, current cell, last index applied, exponent sum)
        fn walk(x: &DeltaSet, dim: usize, cell: usize, remaining: usize, min_index: usize, exp: usize, acc: &mut Vec<(usize, usize)>) {
            if remaining == 0 {
                acc.push((cell, exp));
                return;
            }
            for i in min_index..=dim {
                walk(x, dim - 1, x.face(dim, i, cell), remaining - 1, i, exp + i, acc);
            }
        }
        let mut terms = Vec::new();
        walk(self, n, cell, k, 0, 0, &mut terms);
        let factor = q_factorial(k as u32, q);
        for (c, e) in terms {
            out[c] += &factor * &q.pow(e as i64).expect("nonnegative power");
        }
        out
    }

    pub fn to_repr(&self) -> DeltaSetRepr {
        let mut faces = Vec::new();
        for (&(n, i), map) in &self.faces {
            let names = self.cells(n).iter().zip(map).map(|(c, &k)| (c.clone(), self.cells(n - 1)[k].clone()));
            faces.push(FaceRepr { n, i, map: names.collect() });
        }
        DeltaSetRepr { cells: self.cells.clone(), faces }
    }

    pub fn from_repr(repr: &DeltaSetRepr) -> Result<Self, DeltaError> {
        Self::build(repr.cells.clone(), &repr.faces)
    }

    /// The ordered simplicial complex generated by the given vertex tuples
    /// (each strictly increasing), closed under taking faces. Cells are named
    /// by their vertex digits.
    pub fn from_simplices(simplices: &[Vec<u8>]) -> Result<Self, DeltaError> {
        let mut all: BTreeSet<Vec<u8>> = BTreeSet::new();
        let mut stack: Vec<Vec<u8>> = simplices.to_vec();
        while let Some(s) = stack.pop() {
            if s.is_empty() || !all.insert(s.clone()) {
                continue;
            }
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                stack.push(f);
            }
        }
        let name = |s: &[u8]| s.iter().map(|v| char::from(b'0' + v)).collect::<String>();
        let mut cells: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for s in &all {
            cells.entry(s.len() - 1).or_default().push(name(s));
        }
        let mut faces = Vec::new();
        for (&n, list) in &cells {
            if n == 0 {
                continue;
            }
            for i in 0..=n {
                let map = list
                    .iter()
                    .map(|c| {
                        let mut f = c.clone();
                        f.remove(i);
                        (c.clone(), f)
                    })
                    .collect();
                faces.push(FaceRepr { n, i, map });
            }
        }
        Self::build(cells, &faces)
    }
}

/// The standard simplex `Δ^m` on vertices `0..=m`.
pub fn simplex(m: u8) -> DeltaSet {
    assert!(m <= 9, "vertices are single digits");
    DeltaSet::from_simplices(&[(0..=m).collect()]).expect("standard simplex is valid")
}

/// The boundary `∂Δ^m`: all proper faces of `Δ^m`.
pub fn simplex_boundary(m: u8) -> DeltaSet {
    assert!((1..=9).contains(&m), "boundary needs 1 <= m <= 9");
    let facets: Vec<Vec<u8>> = (0..=m).map(|skip| (0..=m).filter(|&v| v != skip).collect()).collect();
    DeltaSet::from_simplices(&facets).expect("boundary is valid")
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "point", "delta1", "delta2", "delta3", "delta4", "boundary1", "boundary2", "boundary3", "boundary4",
];

pub fn builtin(name: &str) -> Result<DeltaSet, DeltaError> {
    let digit = |prefix: &str| name.strip_prefix(prefix).and_then(|d| d.parse::<u8>().ok());
    match name {
        "point" => Ok(simplex(0)),
        _ => match (digit("delta"), digit("boundary")) {
            (Some(m), _) if m <= 4 => Ok(simplex(m)),
            (_, Some(m)) if (1..=4).contains(&m) => Ok(simplex_boundary(m)),
            _ => Err(DeltaError::UnknownBuiltin(name.to_string())),
        },
    }
}

/// A random complex obtained by gluing a few standard simplices (dimension
/// at most `max_dim`) on the vertices `0..=9` along shared faces.
pub fn random_glued(rng: &mut impl Rng, max_dim: usize) -> DeltaSet {
    let count = rng.gen_range(2..=4);
    let simplices: Vec<Vec<u8>> = (0..count)
        .map(|_| {
            let dim = rng.gen_range(1..=max_dim.min(9));
            let mut verts: Vec<u8> = rand::seq::index::sample(rng, 10, dim + 1).into_iter().map(|v| v as u8).collect();
            verts.sort_unstable();
            verts
        })
        .collect();
    DeltaSet::from_simplices(&simplices).expect("closure of ordered simplices is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::root_of_unity;
    use crate::cyclo::field;
    use crate::homology::homology;

    #[test]
    fn standard_simplex_faces() {
        let d2 = simplex(2);
        assert_eq!(d2.counts(), [(0, 3), (1, 3), (2, 1)].into());
        let c = d2.cell_index(2, "012").unwrap();
        let e = d2.face(2, 2, c);
        assert_eq!(d2.cells(0)[d2.face(1, 0, e)], "1");
        assert!(DeltaSet::build([(0, vec!["v".to_string()])].into(), &[]).is_ok());
    }

    #[test]
    fn swapped_faces_are_rejected() {
        let mut repr = simplex(2).to_repr();
        let f0 = repr.faces.iter().position(|f| f.n == 1 && f.i == 0).unwrap();
        let f1 = repr.faces.iter().position(|f| f.n == 1 && f.i == 1).unwrap();
        let a = repr.faces[f0].map["01"].clone();
        let b = repr.faces[f1].map["01"].clone();
        repr.faces[f0].map.insert("01".into(), b);
        repr.faces[f1].map.insert("01".into(), a);
        assert!(matches!(DeltaSet::from_repr(&repr), Err(DeltaError::SimplicialIdentityViolation { n: 2, .. })));
    }

    #[test]
    fn generic_dq() {
        let f = field(1);
        let q = Scalar::from_int(&f, 2);
        let d2 = simplex(2);
        let m = d2.dq_matrix(2, &q).unwrap();
        let coeff = |name: &str| m[(d2.cell_index(1, name).unwrap(), 0)].clone();
        assert_eq!(coeff("12"), Scalar::one(&f));
        assert_eq!(coeff("02"), q);
        assert_eq!(coeff("01"), Scalar::from_int(&f, 4));
    }

    #[test]
    fn nilpotency_at_roots() {
        for n in 2..=6 {
            let q = root_of_unity(n).unwrap();
            for x in [simplex(4), simplex_boundary(4)] {
                assert!(x.chain_ncomplex(&q, Some(n)).is_ok(), "N = {n}");
            }
        }
        let one = Scalar::one(&field(3));
        assert!(matches!(simplex(2).chain_ncomplex(&one, Some(3)), Err(DeltaError::NotARootOfUnity { .. })));
    }

    #[test]
    fn oracle_examples() {
        let f = field(1);
        let q = Scalar::from_int(&f, 3);
        let d2 = simplex(2);
        let v = d2.dq_power_oracle(2, 0, 2, &q);
        // (1+q)[(2) + q(1) + q^2(0)]
        let expect = |name: &str, k: i64| assert_eq!(v[d2.cell_index(0, name).unwrap()], Scalar::from_int(&f, 4 * k));
        expect("2", 1);
        expect("1", 3);
        expect("0", 9);
        assert_eq!(d2.dq_power_oracle(2, 0, 0, &q), vec![Scalar::one(&f)]);
        assert!(d2.dq_power_oracle(2, 0, 2, &root_of_unity(2).unwrap()).iter().all(Scalar::is_zero));
    }

    #[test]
    fn classical_homology_of_simplex() {
        let q = root_of_unity(2).unwrap();
        let c = simplex(2).chain_ncomplex(&q, Some(2)).unwrap();
        assert_eq!(homology(&c, 1, 0).unwrap().dim(), 1);
        assert_eq!(homology(&c, 1, 1).unwrap().dim(), 0);
        assert_eq!(homology(&c, 1, 2).unwrap().dim(), 0);
    }

    #[test]
    fn repr_round_trip() {
        let x = simplex_boundary(3);
        let text = serde_json::to_string(&x.to_repr()).unwrap();
        assert_eq!(DeltaSet::from_repr(&serde_json::from_str(&text).unwrap()).unwrap(), x);
    }
}
