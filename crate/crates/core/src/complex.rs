//! N-complexes of finite-dimensional spaces over `Q(ζ_M)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{make_field, FieldRef, Scalar, ScalarError};
use crate::linalg::{LinalgError, Matrix, MatrixRepr};
use crate::qnum::eval_poincare;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("composition of {order} differentials starting at degree {top} (down to {bottom}) is nonzero")]
    NotNilpotent { order: u32, top: i64, bottom: i64 },
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A graded space `C_i` with differentials `d_i : C_i → C_{i-1}` such that
/// any `N` consecutive differentials compose to zero.
///
/// Degrees outside the stored range have dimension zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NComplex {
    field: FieldRef,
    order: u32,
    dims: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, Matrix>,
}

impl NComplex {
    /// Validates shapes and the vanishing of every window of `order`
    /// consecutive differentials.
    ///
    /// `diffs[i]` is the matrix of `d_i`, of shape `dims(i-1) × dims(i)`.
    /// Zero-dimensional degrees may be omitted from `dims`.
    pub fn build(
        field: &FieldRef,
        order: u32,
        dims: BTreeMap<i64, usize>,
        diffs: BTreeMap<i64, Matrix>,
    ) -> Result<Self, ComplexError> {
        let c = Self::assemble(field, order, dims, diffs)?;
        c.check_nilpotent()?;
        Ok(c)
    }

    /// Shape-checked but not nilpotency-checked; for sequences whose
    /// nilpotency is itself under test.
    pub fn assemble(
        field: &FieldRef,
        order: u32,
        dims: BTreeMap<i64, usize>,
        diffs: BTreeMap<i64, Matrix>,
    ) -> Result<Self, ComplexError> {
        if order == 0 {
            return Err(ComplexError::ZeroOrder);
        }
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let dim = |i: i64| dims.get(&i).copied().unwrap_or(0);
        let mut kept = BTreeMap::new();
        for (i, m) in diffs {
            if m.field() != field {
                return Err(ScalarError::FieldMismatch { left: field.order(), right: m.field().order() }.into());
            }
            if m.rows() != dim(i - 1) || m.cols() != dim(i) {
                return Err(ComplexError::ShapeMismatch(format!(
                    "d_{i} is {}x{} but should be {}x{}",
                    m.rows(),
                    m.cols(),
                    dim(i - 1),
                    dim(i)
                )));
            }
            if m.rows() > 0 && m.cols() > 0 {
                kept.insert(i, m);
            }
        }
        Ok(NComplex { field: field.clone(), order, dims, diffs: kept })
    }

    /// Checks every window of `order` consecutive differentials.
    pub fn check_nilpotent(&self) -> Result<(), ComplexError> {
        let Some((lo, hi)) = self.support() else { return Ok(()) };
        let n = self.order as i64;
        for top in lo..=hi {
            if top - n < lo {
                continue;
            }
            if !self.power_map(top, self.order).is_zero() {
                return Err(ComplexError::NotNilpotent { order: self.order, top, bottom: top - n });
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self, i: i64) -> usize {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    /// Lowest and highest degree with nonzero dimension.
    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.dims.keys().next()?, *self.dims.keys().next_back()?))
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// The matrix of `d_i : C_i → C_{i-1}`.
    pub fn diff(&self, i: i64) -> Matrix {
        self.diffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(&self.field, self.dim(i - 1), self.dim(i)))
    }

    /// `d^p : C_i → C_{i-p}`; the identity for `p = 0`.
    pub fn power_map(&self, i: i64, p: u32) -> Matrix {
        let mut acc = Matrix::identity(&self.field, self.dim(i));
        for k in 0..p as i64 {
            acc = self.diff(i - k).mul(&acc);
            if acc.rows() == 0 || acc.cols() == 0 {
                return Matrix::zeros(&self.field, self.dim(i - p as i64), self.dim(i));
            }
        }
        acc
    }

    /// The same spaces and maps with every degree raised by `k`.
    pub fn shift(&self, k: i64) -> NComplex {
        NComplex {
            field: self.field.clone(),
            order: self.order,
            dims: self.dims.iter().map(|(&i, &d)| (i + k, d)).collect(),
            diffs: self.diffs.iter().map(|(&i, m)| (i + k, m.clone())).collect(),
        }
    }

    pub fn direct_sum(&self, other: &NComplex) -> Result<NComplex, ComplexError> {
        if self.order != other.order {
            return Err(ComplexError::InvalidArgument(format!(
                "cannot add complexes of orders {} and {}",
                self.order, other.order
            )));
        }
        if self.field != other.field {
            return Err(ScalarError::FieldMismatch { left: self.field.order(), right: other.field.order() }.into());
        }
        let mut dims = self.dims.clone();
        for (&i, &d) in &other.dims {
            *dims.entry(i).or_insert(0) += d;
        }
        let degrees: Vec<i64> = self.diffs.keys().chain(other.diffs.keys()).copied().collect();
        let diffs = degrees.into_iter().map(|i| (i, self.diff(i).block_diag(&other.diff(i)))).collect();
        Ok(NComplex { field: self.field.clone(), order: self.order, dims, diffs })
    }

    /// Conjugates degreewise: `d'_i = g_{i-1} d_i g_i^{-1}`.
    ///
    /// `bases[i]` must be invertible of size `dim(i)`; missing degrees use the identity.
    pub fn change_basis(&self, bases: &BTreeMap<i64, Matrix>) -> Result<NComplex, ComplexError> {
        let mut inverses = BTreeMap::new();
        for (&i, g) in bases {
            if g.rows() != self.dim(i) || g.cols() != self.dim(i) {
                return Err(ComplexError::ShapeMismatch(format!("base change at degree {i} has wrong size")));
            }
            inverses.insert(i, g.inverse()?);
        }
        let id = |i: i64| Matrix::identity(&self.field, self.dim(i));
        let diffs = self
            .diffs
            .iter()
            .map(|(&i, d)| {
                let left = bases.get(&(i - 1)).cloned().unwrap_or_else(|| id(i - 1));
                let right = inverses.get(&i).cloned().unwrap_or_else(|| id(i));
                (i, left.mul(d).mul(&right))
            })
            .collect();
        Ok(NComplex { field: self.field.clone(), order: self.order, dims: self.dims.clone(), diffs })
    }

    /// `Σ dim(C_i) t^i` as a degree → dimension map.
    pub fn poincare(&self) -> BTreeMap<i64, u64> {
        self.dims.iter().map(|(&i, &d)| (i, d as u64)).collect()
    }

    /// The Poincaré polynomial evaluated at `exp(2πi/N)` in `Q(ζ_N)`.
    pub fn poincare_at_root(&self) -> Result<Scalar, ComplexError> {
        let q = root_of_unity(self.order)?;
        Ok(eval_poincare(&self.poincare(), &q)?)
    }

    pub fn to_repr(&self) -> ComplexRepr {
        ComplexRepr {
            order: self.order,
            field_order: Some(self.field.order()),
            degrees: self.dims.iter().map(|(&i, &dim)| DegreeRepr { i, dim }).collect(),
            diffs: self.diffs.iter().map(|(&i, m)| DiffRepr { i, matrix: m.to_repr() }).collect(),
        }
    }

    /// Parses and validates a serialized complex. Without an explicit field
    /// order the coefficients live in `Q(ζ_N)`.
    pub fn from_repr(repr: &ComplexRepr) -> Result<NComplex, ComplexError> {
        let c = Self::from_repr_unchecked(repr)?;
        c.check_nilpotent()?;
        Ok(c)
    }

    /// Parses a serialized complex, checking shapes but not nilpotency.
    pub fn from_repr_unchecked(repr: &ComplexRepr) -> Result<NComplex, ComplexError> {
        let m = repr.field_order.unwrap_or(repr.order.max(1));
        let field = make_field(m)?;
        let mut dims = BTreeMap::new();
        for d in &repr.degrees {
            if dims.insert(d.i, d.dim).is_some() {
                return Err(ComplexError::InvalidArgument(format!("degree {} listed twice", d.i)));
            }
        }
        let mut diffs = BTreeMap::new();
        for d in &repr.diffs {
            let mat = Matrix::from_repr(&d.matrix, &field)?;
            if diffs.insert(d.i, mat).is_some() {
                return Err(ComplexError::InvalidArgument(format!("differential d_{} listed twice", d.i)));
            }
        }
        NComplex::assemble(&field, repr.order, dims, diffs)
    }
}

/// `exp(2πi/n)` as an element of `Q(ζ_n)`; `1` when `n = 1`.
pub fn root_of_unity(n: u32) -> Result<Scalar, ScalarError> {
    let f = make_field(n)?;
    if n == 1 {
        Ok(Scalar::one(&f))
    } else {
        Scalar::primitive_root(&f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRepr {
    pub i: i64,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffRepr {
    pub i: i64,
    pub matrix: MatrixRepr,
}

/// Serialized complex:
/// `{"N": n, "M": m, "degrees": [{"i", "dim"}...], "diffs": [{"i", "matrix"}...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexRepr {
    #[serde(rename = "N")]
    pub order: u32,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub field_order: Option<u32>,
    pub degrees: Vec<DegreeRepr>,
    #[serde(default)]
    pub diffs: Vec<DiffRepr>,
}

/// `C_top → C_{top-1} → … → C_{top-length+1}`, each space of dimension `r`
/// and each map the identity.
pub fn elementary_chain(field: &FieldRef, order: u32, top: i64, length: u32, r: usize) -> Result<NComplex, ComplexError> {
    if length == 0 || length > order {
        return Err(ComplexError::InvalidArgument(format!(
            "chain length must be between 1 and N = {order}, got {length}"
        )));
    }
    let bottom = top - length as i64 + 1;
    let dims = (bottom..=top).map(|i| (i, r)).collect();
    let diffs = (bottom + 1..=top).map(|i| (i, Matrix::identity(field, r))).collect();
    NComplex::build(field, order, dims, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::field;

    fn q1() -> FieldRef {
        field(1)
    }

    fn id_chain(order: u32, len: usize) -> Result<NComplex, ComplexError> {
        let f = q1();
        let dims = (0..len as i64).map(|i| (i, 1)).collect();
        let diffs = (1..len as i64).map(|i| (i, Matrix::identity(&f, 1))).collect();
        NComplex::build(&f, order, dims, diffs)
    }

    #[test]
    fn build_validation() {
        assert!(id_chain(2, 2).is_ok());
        assert!(id_chain(3, 3).is_ok());
        assert_eq!(
            id_chain(2, 3).unwrap_err(),
            ComplexError::NotNilpotent { order: 2, top: 2, bottom: 0 }
        );
        let f = q1();
        let bad = NComplex::build(&f, 2, [(0, 1), (1, 2)].into(), [(1, Matrix::identity(&f, 1))].into());
        assert!(matches!(bad, Err(ComplexError::ShapeMismatch(_))));
    }

    #[test]
    fn power_maps() {
        let c = id_chain(3, 3).unwrap();
        assert_eq!(c.power_map(1, 0), Matrix::identity(&q1(), 1));
        assert_eq!(c.power_map(2, 2), Matrix::identity(&q1(), 1));
        assert!(c.power_map(2, 3).is_zero());
        assert_eq!(c.power_map(2, 3).cols(), 1);
    }

    #[test]
    fn builders() {
        let f = q1();
        let c = elementary_chain(&f, 3, 2, 3, 1).unwrap();
        assert_eq!(c, id_chain(3, 3).unwrap());
        assert_eq!(c.shift(5).support(), Some((5, 7)));
        let s = c.direct_sum(&c.shift(1)).unwrap();
        assert_eq!(s.dims(), &[(0, 1), (1, 2), (2, 2), (3, 1)].into());
        assert!(s.check_nilpotent().is_ok());
        assert!(elementary_chain(&f, 3, 0, 4, 1).is_err());
    }

    #[test]
    fn poincare_values() {
        let c = elementary_chain(&field(3), 3, 2, 3, 1).unwrap();
        assert_eq!(c.poincare(), [(0, 1), (1, 1), (2, 1)].into());
        assert!(c.poincare_at_root().unwrap().is_zero());
        let single = NComplex::build(&field(3), 3, [(0, 1)].into(), BTreeMap::new()).unwrap();
        assert!(single.poincare_at_root().unwrap().is_one());
    }

    #[test]
    fn json_round_trip() {
        let c = elementary_chain(&field(3), 3, 2, 3, 2).unwrap();
        let text = serde_json::to_string(&c.to_repr()).unwrap();
        let back = NComplex::from_repr(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, c);
        let no_m = r#"{"N":2,"degrees":[{"i":0,"dim":1},{"i":1,"dim":1}],
            "diffs":[{"i":1,"matrix":{"rows":1,"cols":1,"entries":[{"M":2,"coords":["1/1"]}]}}]}"#;
        let c2 = NComplex::from_repr(&serde_json::from_str(no_m).unwrap()).unwrap();
        assert_eq!(c2.field().order(), 2);
    }
}
