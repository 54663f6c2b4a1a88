//! Dense exact linear algebra over `Q(ζ_M)`.
//!
//! Elimination always pivots on the first nonzero entry of a column, so the
//! echelon forms, kernel bases and coset representatives produced here are
//! deterministic functions of the input.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{FieldRef, Scalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("subspace containment violated: {0}")]
    NotContained(String),
    #[error("map does not respect the subquotient filtrations: {0}")]
    NotWellDefined(String),
    #[error("matrix is singular")]
    Singular,
}

/// Row-major dense matrix over a single cyclotomic field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldRef,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over Q(z{}) [", self.rows, self.cols, self.field.order())?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

/// Reduced row echelon form with the pivot column of each nonzero row.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &FieldRef, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(field: &FieldRef, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one(field);
        }
        m
    }

    pub fn from_fn(field: &FieldRef, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Builds a matrix from row-major entries, checking length and field.
    pub fn from_entries(field: &FieldRef, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field().order() != field.order()) {
            return Err(ScalarError::FieldMismatch { left: field.order(), right: bad.field().order() }.into());
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn from_int_rows(field: &FieldRef, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(field, rows.len(), cols, |r, c| Scalar::from_int(field, rows[r][c]))
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: &FieldRef, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if self.field.order() != rhs.field.order() {
            return Err(ScalarError::FieldMismatch { left: self.field.order(), right: rhs.field.order() }.into());
        }
        let mut out = Matrix::zeros(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product")
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix width");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero(&self.field);
                for (c, x) in v.iter().enumerate() {
                    let a = &self[(r, c)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shapes differ");
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Re-expresses every entry in a larger cyclotomic field.
    pub fn embed(&self, target: &FieldRef) -> Result<Matrix, LinalgError> {
        let data = self.data.iter().map(|s| s.embed(target)).collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix { field: target.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "hstack needs equal row counts");
        Matrix::from_fn(&self.field, self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                rhs[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "vstack needs equal column counts");
        Matrix::from_fn(&self.field, self.rows + rhs.rows, self.cols, |r, c| {
            if r < self.rows {
                self[(r, c)].clone()
            } else {
                rhs[(r - self.rows, c)].clone()
            }
        })
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(&self.field, rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn block_diag(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, rhs);
        out
    }

    /// Reduced row echelon form by first-nonzero pivoting.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for c in col..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m[(row, col)].inv().expect("nonzero pivot is invertible");
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let pv = &m[(row, c)];
                    if pv.is_zero() {
                        continue;
                    }
                    let v = &m[(r, c)] - &(&factor * pv);
                    m[(r, c)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel_basis(&self) -> Subspace {
        let ech = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let columns: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![Scalar::zero(&self.field); self.cols];
                v[fc] = Scalar::one(&self.field);
                for (r, &pc) in ech.pivots.iter().enumerate() {
                    v[pc] = -&ech.reduced[(r, fc)];
                }
                v
            })
            .collect();
        Subspace::from_independent(&self.field, self.cols, &columns)
    }

    /// Basis of the column space: the pivot columns of `self`.
    pub fn image_basis(&self) -> Subspace {
        let ech = self.rref();
        let columns: Vec<Vec<Scalar>> = ech.pivots.iter().map(|&c| self.column(c)).collect();
        Subspace::from_independent(&self.field, self.rows, &columns)
    }

    /// Some `X` with `self · X = rhs`, or `None` when a column of `rhs` is
    /// outside the image.
    pub fn solve_many(&self, rhs: &Matrix) -> Result<Option<Matrix>, LinalgError> {
        if rhs.rows != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "system has {} equations but right-hand side has {} rows",
                self.rows, rhs.rows
            )));
        }
        let ech = self.hstack(rhs).rref();
        if ech.pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(&self.field, self.cols, rhs.cols);
        for (r, &pc) in ech.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(pc, j)] = ech.reduced[(r, self.cols + j)].clone();
            }
        }
        Ok(Some(x))
    }

    pub fn solve(&self, target: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        let rhs = Matrix::from_columns(&self.field, target.len(), &[target.to_vec()]);
        Ok(self.solve_many(&rhs)?.map(|x| x.column(0)))
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        match self.solve_many(&Matrix::identity(&self.field, self.rows))? {
            Some(x) if self.rank() == self.rows => Ok(x),
            _ => Err(LinalgError::Singular),
        }
    }

    pub fn to_repr(&self) -> MatrixRepr {
        MatrixRepr { rows: self.rows, cols: self.cols, entries: self.data.clone() }
    }

    /// Parses a serialized matrix; `field` is used when there are no entries.
    pub fn from_repr(repr: &MatrixRepr, field: &FieldRef) -> Result<Matrix, LinalgError> {
        Matrix::from_entries(field, repr.rows, repr.cols, repr.entries.clone())
    }
}

/// Serialized matrix: `{"rows": r, "cols": c, "entries": [scalar, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRepr {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Scalar>,
}

/// Incrementally grown set of independent vectors kept in echelon form.
#[derive(Debug, Clone)]
pub struct IncrementalBasis {
    reduced: Vec<(usize, Vec<Scalar>)>,
}

impl IncrementalBasis {
    pub fn new() -> Self {
        IncrementalBasis { reduced: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.reduced.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reduced.is_empty()
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, s) in &self.reduced {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(s) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v` if it is independent of the current span; reports whether it was.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        let r: Vec<Scalar> = r.iter().map(|x| x * &inv).collect();
        self.reduced.push((p, r));
        true
    }
}

impl Default for IncrementalBasis {
    fn default() -> Self {
        Self::new()
    }
}

/// A subspace of `field^ambient_dim` given by independent basis columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: &FieldRef, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::zeros(field, ambient_dim, 0) }
    }

    pub fn full(field: &FieldRef, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::identity(field, ambient_dim) }
    }

    fn from_independent(field: &FieldRef, ambient_dim: usize, columns: &[Vec<Scalar>]) -> Self {
        Subspace { ambient_dim, basis: Matrix::from_columns(field, ambient_dim, columns) }
    }

    /// Span of arbitrary vectors; dependent ones are dropped in order.
    pub fn span(field: &FieldRef, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        let mut inc = IncrementalBasis::new();
        let kept: Vec<Vec<Scalar>> = vectors.iter().filter(|v| inc.insert(v)).cloned().collect();
        Self::from_independent(field, ambient_dim, &kept)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn field(&self) -> &FieldRef {
        self.basis.field()
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.dim() == 0 && v.iter().all(Scalar::is_zero)
            || matches!(self.basis.solve(v), Ok(Some(_)))
    }

    /// True when every column of `vectors` lies in this subspace.
    pub fn contains_columns(&self, vectors: &Matrix) -> Result<bool, LinalgError> {
        if vectors.rows() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch("vectors live in a different ambient space".into()));
        }
        if vectors.cols() == 0 {
            return Ok(true);
        }
        Ok(self.basis.solve_many(vectors)?.is_some())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.contains_columns(&other.basis)
    }

    pub fn same_span(&self, other: &Subspace) -> Result<bool, LinalgError> {
        Ok(self.dim() == other.dim() && self.contains(other)?)
    }
}

/// The quotient `numerator / denominator` of nested subspaces with chosen
/// coset representatives.
#[derive(Debug, Clone)]
pub struct Subquotient {
    numerator: Subspace,
    denominator: Subspace,
    lift: Matrix,
    /// `[lift | denominator basis]`, a basis of the numerator.
    adapted: Matrix,
}

/// Forms `numerator / denominator`, extending the denominator basis greedily
/// with numerator basis vectors in their given order.
pub fn subquotient(numerator: Subspace, denominator: Subspace) -> Result<Subquotient, LinalgError> {
    if numerator.ambient_dim() != denominator.ambient_dim() {
        return Err(LinalgError::DimensionMismatch("subquotient of different ambient spaces".into()));
    }
    if !numerator.contains(&denominator)? {
        return Err(LinalgError::NotContained("denominator is not inside the numerator".into()));
    }
    let field = numerator.field().clone();
    let mut inc = IncrementalBasis::new();
    for c in denominator.basis().columns() {
        inc.insert(&c);
    }
    let lift_cols: Vec<Vec<Scalar>> = numerator.basis().columns().into_iter().filter(|c| inc.insert(c)).collect();
    let lift = Matrix::from_columns(&field, numerator.ambient_dim(), &lift_cols);
    let adapted = lift.hstack(denominator.basis());
    Ok(Subquotient { numerator, denominator, lift, adapted })
}

impl Subquotient {
    pub fn dim(&self) -> usize {
        self.lift.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.numerator.ambient_dim()
    }

    pub fn numerator(&self) -> &Subspace {
        &self.numerator
    }

    pub fn denominator(&self) -> &Subspace {
        &self.denominator
    }

    /// Columns are the chosen coset representatives.
    pub fn lift(&self) -> &Matrix {
        &self.lift
    }

    /// Coordinates of the classes of the given numerator vectors in the lift basis.
    pub fn coordinates(&self, vectors: &Matrix) -> Result<Matrix, LinalgError> {
        let field = self.lift.field();
        if vectors.cols() == 0 {
            return Ok(Matrix::zeros(field, self.dim(), 0));
        }
        if self.adapted.cols() == 0 {
            return if vectors.is_zero() {
                Ok(Matrix::zeros(field, 0, vectors.cols()))
            } else {
                Err(LinalgError::NotContained("vector outside the numerator".into()))
            };
        }
        let x = self
            .adapted
            .solve_many(vectors)?
            .ok_or_else(|| LinalgError::NotContained("vector outside the numerator".into()))?;
        Ok(x.block(0, 0, self.dim(), vectors.cols()))
    }

    /// True when `v` (in the numerator) represents the zero class.
    pub fn is_zero_class(&self, v: &[Scalar]) -> bool {
        self.denominator.contains_vector(v)
    }
}

/// Matrix of the map `source → target` induced by `f` in the lift bases.
pub fn induced_map(f: &Matrix, source: &Subquotient, target: &Subquotient) -> Result<Matrix, LinalgError> {
    if f.cols() != source.ambient_dim() || f.rows() != target.ambient_dim() {
        return Err(LinalgError::DimensionMismatch(format!(
            "{}x{} map between ambient spaces of dimension {} and {}",
            f.rows(),
            f.cols(),
            source.ambient_dim(),
            target.ambient_dim()
        )));
    }
    if !target.numerator.contains_columns(&f.mul(source.numerator.basis()))? {
        return Err(LinalgError::NotWellDefined("image of the numerator escapes the target numerator".into()));
    }
    if !target.denominator.contains_columns(&f.mul(source.denominator.basis()))? {
        return Err(LinalgError::NotWellDefined("image of the denominator escapes the target denominator".into()));
    }
    target.coordinates(&f.mul(&source.lift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::field;

    #[test]
    fn ranks() {
        let f1 = field(1);
        assert_eq!(Matrix::identity(&f1, 3).rank(), 3);
        assert_eq!(Matrix::zeros(&f1, 2, 5).rank(), 0);
        let f3 = field(3);
        let w = Scalar::primitive_root(&f3).unwrap();
        let m = Matrix::from_entries(&f3, 2, 2, vec![Scalar::one(&f3), w.clone(), w.clone(), &w * &w]).unwrap();
        assert_eq!(m.rank(), 1);
        let img = m.image_basis();
        assert_eq!(img.dim(), 1);
        assert!(img.contains_vector(&[Scalar::one(&f3), w.clone()]));
    }

    #[test]
    fn kernels() {
        let f1 = field(1);
        assert_eq!(Matrix::identity(&f1, 3).kernel_basis().dim(), 0);
        assert_eq!(Matrix::zeros(&f1, 2, 2).kernel_basis().dim(), 2);
        let k = Matrix::from_int_rows(&f1, &[&[1, 1]]).kernel_basis();
        assert_eq!(k.dim(), 1);
        assert!(k.contains_vector(&[Scalar::from_int(&f1, 1), Scalar::from_int(&f1, -1)]));
    }

    #[test]
    fn solving() {
        let f1 = field(1);
        let v = vec![Scalar::from_int(&f1, 3), Scalar::from_ratio(&f1, 1, 2)];
        assert_eq!(Matrix::identity(&f1, 2).solve(&v).unwrap(), Some(v.clone()));
        assert_eq!(Matrix::zeros(&f1, 2, 2).solve(&v).unwrap(), None);
        let m = Matrix::from_int_rows(&f1, &[&[1, 1]]);
        let sol = m.solve(&[Scalar::from_int(&f1, 2)]).unwrap().unwrap();
        assert_eq!(m.apply(&sol), vec![Scalar::from_int(&f1, 2)]);
        assert!(matches!(m.solve(&v), Err(LinalgError::DimensionMismatch(_))));
    }

    #[test]
    fn inverses() {
        let f4 = field(4);
        let i = Scalar::primitive_root(&f4).unwrap();
        let m = Matrix::from_entries(
            &f4,
            2,
            2,
            vec![Scalar::one(&f4), i.clone(), Scalar::from_int(&f4, 2), Scalar::from_int(&f4, 5)],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(&f4, 2));
        assert_eq!(Matrix::zeros(&f4, 2, 2).inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn subquotients() {
        let f1 = field(1);
        let full = Subspace::full(&f1, 2);
        assert_eq!(subquotient(full.clone(), full.clone()).unwrap().dim(), 0);
        let sq = subquotient(full.clone(), Subspace::zero(&f1, 2)).unwrap();
        assert_eq!(sq.dim(), 2);
        assert_eq!(sq.lift(), full.basis());
        let line = Subspace::span(&f1, 2, &[vec![Scalar::one(&f1), Scalar::zero(&f1)]]);
        let sq = subquotient(full.clone(), line.clone()).unwrap();
        assert_eq!(sq.dim(), 1);
        assert!(matches!(subquotient(line, full), Err(LinalgError::NotContained(_))));
    }

    #[test]
    fn induced_maps() {
        let f1 = field(1);
        let full = Subspace::full(&f1, 2);
        let line = Subspace::span(&f1, 2, &[vec![Scalar::one(&f1), Scalar::one(&f1)]]);
        let sq = subquotient(full, line.clone()).unwrap();
        let id = Matrix::identity(&f1, 2);
        assert_eq!(induced_map(&id, &sq, &sq).unwrap(), Matrix::identity(&f1, 1));
        assert!(induced_map(&Matrix::zeros(&f1, 2, 2), &sq, &sq).unwrap().is_zero());
        // e2 = (e1 + e2) - e1, so the swap acts by -1 modulo the diagonal
        let swap = Matrix::from_int_rows(&f1, &[&[0, 1], &[1, 0]]);
        assert_eq!(induced_map(&swap, &sq, &sq).unwrap(), Matrix::from_int_rows(&f1, &[&[-1]]));
        let shear = Matrix::from_int_rows(&f1, &[&[1, 0], &[0, 2]]);
        assert!(matches!(induced_map(&shear, &sq, &sq), Err(LinalgError::NotWellDefined(_))));
    }
}
