//! Connections `∇ = d + A` on trivial bundles of rank `r` over the q-de Rham
//! algebra, their N-curvature and the identities it is expected to satisfy.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::complex::root_of_unity;
use crate::cyclo::{FieldRef, Scalar, ScalarError};
use crate::forms::{random_form, FormError, FormRepr, QForm};
use crate::linalg::Matrix;
use crate::qnum::q_binomial;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GaugeError {
    #[error("shape mismatch: {0}")]
    Mismatch(String),
    #[error("∇^N is not multiplication by a matrix: probe {probe} on column {column} leaves {defect}")]
    NotOrderZero { probe: String, column: usize, defect: String },
    #[error("gauge element is not invertible over polynomials")]
    NotInvertible,
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// An `r × r` matrix of forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixForm {
    r: usize,
    entries: Vec<QForm>,
}

/// A column of `r` forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorForm {
    entries: Vec<QForm>,
}

impl MatrixForm {
    pub fn from_fn(r: usize, mut f: impl FnMut(usize, usize) -> QForm) -> Self {
        let entries = (0..r * r).map(|k| f(k / r, k % r)).collect();
        MatrixForm { r, entries }
    }

    pub fn zero(field: &FieldRef, n: usize, r: usize) -> Self {
        Self::from_fn(r, |_, _| QForm::zero(field, n))
    }

    pub fn identity(field: &FieldRef, n: usize, r: usize) -> Self {
        Self::from_fn(r, |a, b| {
            if a == b {
                QForm::constant(&Scalar::one(field), n)
            } else {
                QForm::zero(field, n)
            }
        })
    }

    /// A matrix of constant functions.
    pub fn from_matrix(m: &Matrix, n: usize) -> Self {
        Self::from_fn(m.rows(), |a, b| QForm::constant(&m[(a, b)], n))
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn get(&self, a: usize, b: usize) -> &QForm {
        &self.entries[a * self.r + b]
    }

    pub fn entries(&self) -> &[QForm] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(QForm::is_zero)
    }

    pub fn add(&self, other: &MatrixForm) -> MatrixForm {
        Self::from_fn(self.r, |a, b| self.get(a, b).add(other.get(a, b)))
    }

    pub fn sub(&self, other: &MatrixForm) -> MatrixForm {
        Self::from_fn(self.r, |a, b| self.get(a, b).sub(other.get(a, b)))
    }

    pub fn scale(&self, s: &Scalar) -> MatrixForm {
        Self::from_fn(self.r, |a, b| self.get(a, b).scale(s))
    }

    /// Matrix product with q-form multiplication of entries.
    pub fn mul(&self, other: &MatrixForm, q: &Scalar) -> MatrixForm {
        Self::from_fn(self.r, |a, b| {
            (0..self.r).fold(QForm::zero(q.field(), self.n_vars()), |acc, c| {
                acc.add(&self.get(a, c).mul(other.get(c, b), q))
            })
        })
    }

    pub fn apply(&self, v: &VectorForm, q: &Scalar) -> VectorForm {
        VectorForm {
            entries: (0..self.r)
                .map(|a| {
                    (0..self.r).fold(QForm::zero(q.field(), self.n_vars()), |acc, c| acc.add(&self.get(a, c).mul(&v.entries[c], q)))
                })
                .collect(),
        }
    }

    /// Entrywise exterior derivative.
    pub fn d(&self, q: &Scalar) -> MatrixForm {
        Self::from_fn(self.r, |a, b| self.get(a, b).exterior_d(q))
    }

    pub fn trace(&self) -> QForm {
        (1..self.r).fold(self.get(0, 0).clone(), |acc, a| acc.add(self.get(a, a)))
    }

    pub fn n_vars(&self) -> usize {
        self.entries[0].n_vars()
    }

    pub fn column(&self, b: usize) -> VectorForm {
        VectorForm { entries: (0..self.r).map(|a| self.get(a, b).clone()).collect() }
    }

    fn from_columns(cols: &[VectorForm]) -> MatrixForm {
        Self::from_fn(cols.len(), |a, b| cols[b].entries[a].clone())
    }

    /// The polynomial coefficient matrix of `ξ_i` in a matrix of 1-forms.
    pub fn xi_component(&self, i: usize) -> MatrixForm {
        Self::from_fn(self.r, |a, b| xi_coefficient(self.get(a, b), i))
    }
}

fn xi_coefficient(f: &QForm, i: usize) -> QForm {
    f.terms()
        .iter()
        .filter(|((_, j), _)| j.as_slice() == [i])
        .fold(QForm::zero(f.field(), f.n_vars()), |acc, ((a, _), c)| acc.add(&QForm::monomial(c, a.clone(), vec![])))
}

impl VectorForm {
    pub fn new(entries: Vec<QForm>) -> Self {
        VectorForm { entries }
    }

    /// The constant section `e_k`.
    pub fn basis(field: &FieldRef, n: usize, r: usize, k: usize) -> Self {
        VectorForm {
            entries: (0..r)
                .map(|a| if a == k { QForm::constant(&Scalar::one(field), n) } else { QForm::zero(field, n) })
                .collect(),
        }
    }

    pub fn entries(&self) -> &[QForm] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(QForm::is_zero)
    }

    pub fn add(&self, other: &VectorForm) -> VectorForm {
        VectorForm { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &VectorForm) -> VectorForm {
        VectorForm { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect() }
    }

    /// Left multiplication of every entry by the form `w`.
    pub fn left_mul(&self, w: &QForm, q: &Scalar) -> VectorForm {
        VectorForm { entries: self.entries.iter().map(|e| w.mul(e, q)).collect() }
    }

    pub fn d(&self, q: &Scalar) -> VectorForm {
        VectorForm { entries: self.entries.iter().map(|e| e.exterior_d(q)).collect() }
    }
}

/// `∇ = d + A` with `A` a matrix of 1-forms and `q` a primitive `N`-th root of unity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QConnection {
    a: MatrixForm,
    q: Scalar,
    order: u32,
}

impl QConnection {
    pub fn new(a: MatrixForm, order: u32) -> Result<Self, GaugeError> {
        let q = root_of_unity(order)?;
        if a.entries.iter().any(|e| e.field() != q.field()) {
            return Err(GaugeError::Mismatch(format!("entries of A must lie in Q(ζ_{order})")));
        }
        if a.entries.iter().any(|e| e.n_vars() != a.n_vars()) {
            return Err(GaugeError::Mismatch("entries of A use different numbers of variables".into()));
        }
        if a.entries.iter().any(|e| !e.is_zero() && e.form_degree() != Some(1)) {
            return Err(GaugeError::Mismatch("A must be a matrix of 1-forms".into()));
        }
        Ok(QConnection { a, q, order })
    }

    pub fn zero(order: u32, n: usize, r: usize) -> Result<Self, GaugeError> {
        let q = root_of_unity(order)?;
        Self::new(MatrixForm::zero(q.field(), n, r), order)
    }

    pub fn a(&self) -> &MatrixForm {
        &self.a
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.a.r
    }

    pub fn n_vars(&self) -> usize {
        self.a.n_vars()
    }

    fn field(&self) -> &FieldRef {
        self.q.field()
    }

    pub fn nabla_apply(&self, s: &VectorForm) -> Result<VectorForm, GaugeError> {
        if s.entries.len() != self.rank() || s.entries.iter().any(|e| e.n_vars() != self.n_vars()) {
            return Err(GaugeError::Mismatch("section does not match the connection".into()));
        }
        Ok(s.d(&self.q).add(&self.a.apply(s, &self.q)))
    }

    pub fn nabla_power(&self, s: &VectorForm, k: u32) -> Result<VectorForm, GaugeError> {
        (0..k).try_fold(s.clone(), |acc, _| self.nabla_apply(&acc))
    }

    /// `∇^N` applied to the constant frame, assembled columnwise, without
    /// checking that `∇^N` is multiplication by it.
    pub fn frame_curvature(&self) -> MatrixForm {
        let cols: Vec<VectorForm> = (0..self.rank())
            .map(|k| {
                self.nabla_power(&VectorForm::basis(self.field(), self.n_vars(), self.rank(), k), self.order)
                    .expect("frame matches the connection")
            })
            .collect();
        MatrixForm::from_columns(&cols)
    }

    /// Probe polynomials `x_a`, `x_a x_b` and `x_a²`.
    fn probes(&self) -> Vec<(String, QForm)> {
        let n = self.n_vars();
        let mut out = Vec::new();
        for a in 0..n {
            let xa = QForm::x(self.field(), n, a);
            out.push((format!("x{}", a + 1), xa.clone()));
            out.push((format!("x{}^2", a + 1), xa.mul(&xa, &self.q)));
            for b in a + 1..n {
                out.push((format!("x{}*x{}", a + 1, b + 1), xa.mul(&QForm::x(self.field(), n, b), &self.q)));
            }
        }
        out
    }

    /// `∇^N(f e_k) - f ∇^N(e_k)` for the first probe and column where it is
    /// nonzero.
    pub fn order_zero_defect(&self, frame: &MatrixForm) -> Option<(String, usize, VectorForm)> {
        let (n, r) = (self.n_vars(), self.rank());
        for (name, f) in self.probes() {
            for k in 0..r {
                let s = VectorForm::basis(self.field(), n, r, k).left_mul(&f, &self.q);
                let lhs = self.nabla_power(&s, self.order).expect("probe matches the connection");
                let defect = lhs.sub(&frame.column(k).left_mul(&f, &self.q));
                if !defect.is_zero() {
                    return Some((name, k, defect));
                }
            }
        }
        None
    }

    /// The matrix `F` with `∇^N = F ·`, after checking on probe sections that
    /// `∇^N` is indeed of order zero.
    pub fn curvature(&self) -> Result<MatrixForm, GaugeError> {
        let frame = self.frame_curvature();
        match self.order_zero_defect(&frame) {
            None => Ok(frame),
            Some((probe, column, defect)) => Err(GaugeError::NotOrderZero {
                probe,
                column,
                defect: defect.entries.iter().find(|e| !e.is_zero()).map(|e| e.to_string()).unwrap_or_default(),
            }),
        }
    }

    /// `Σ_k [n k]_q d^k(f) ∇^{n-k}(s)` for a function `f`.
    pub fn lemma_expand(&self, f: &QForm, s: &VectorForm, n_power: u32) -> Result<VectorForm, GaugeError> {
        let mut out = VectorForm { entries: vec![QForm::zero(self.field(), self.n_vars()); self.rank()] };
        for k in 0..=n_power {
            let c = q_binomial(n_power, k as i64, &self.q);
            if c.is_zero() {
                continue;
            }
            let term = self.nabla_power(s, n_power - k)?.left_mul(&f.d_power(k, &self.q).scale(&c), &self.q);
            out = out.add(&term);
        }
        Ok(out)
    }

    /// `d²A + d(A)A + q A d(A) + AAA`, the closed curvature formula at `N = 3`.
    pub fn curvature_formula_n3(&self) -> Result<MatrixForm, GaugeError> {
        if self.order != 3 {
            return Err(GaugeError::Unsupported(format!("closed formula needs N = 3, got {}", self.order)));
        }
        let (a, q) = (&self.a, &self.q);
        let da = a.d(q);
        Ok(da.d(q).add(&da.mul(a, q)).add(&a.mul(&da, q).scale(q)).add(&a.mul(a, q).mul(a, q)))
    }

    /// `g^{-1} dg + g^{-1} A g`.
    pub fn gauge_transform(&self, g: &MatrixForm) -> Result<QConnection, GaugeError> {
        if g.r != self.rank() || g.n_vars() != self.n_vars() {
            return Err(GaugeError::Mismatch("gauge element does not match the connection".into()));
        }
        let q = &self.q;
        let g_inv = polynomial_inverse(g, q)?;
        let a = g_inv.mul(&g.d(q), q).add(&g_inv.mul(&self.a, q).mul(g, q));
        QConnection::new(a, self.order)
    }

    /// `dF + AF - FA`.
    pub fn bianchi_defect(&self, f: &MatrixForm) -> MatrixForm {
        let q = &self.q;
        f.d(q).add(&self.a.mul(f, q)).sub(&f.mul(&self.a, q))
    }

    pub fn to_repr(&self) -> ConnectionRepr {
        ConnectionRepr {
            r: self.rank(),
            n: self.n_vars(),
            order: self.order,
            a: (0..self.rank()).map(|i| (0..self.rank()).map(|j| self.a.get(i, j).to_repr()).collect()).collect(),
        }
    }

    pub fn from_repr(repr: &ConnectionRepr) -> Result<Self, GaugeError> {
        if repr.r == 0 || repr.a.len() != repr.r || repr.a.iter().any(|row| row.len() != repr.r) {
            return Err(GaugeError::Mismatch(format!("A must be {0}×{0}", repr.r)));
        }
        let mut entries = Vec::new();
        for (i, row) in repr.a.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                let mut f = f.clone();
                f.field_order.get_or_insert(repr.order);
                let form = QForm::from_repr(&f).map_err(|e| GaugeError::Mismatch(format!("A[{i}][{j}]: {e}")))?;
                if form.n_vars() != repr.n {
                    return Err(GaugeError::Mismatch(format!("A[{i}][{j}] uses {} variables, expected {}", form.n_vars(), repr.n)));
                }
                entries.push(form);
            }
        }
        QConnection::new(MatrixForm { r: repr.r, entries }, repr.order)
    }
}

/// Serialized connection `{"r", "n", "N", "A": [[form, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionRepr {
    pub r: usize,
    pub n: usize,
    #[serde(rename = "N")]
    pub order: u32,
    #[serde(rename = "A")]
    pub a: Vec<Vec<FormRepr>>,
}

/// Inverse of a matrix of functions that is either constant or unipotent
/// (`g - 1` nilpotent), verified by multiplication.
pub fn polynomial_inverse(g: &MatrixForm, q: &Scalar) -> Result<MatrixForm, GaugeError> {
    let (field, n, r) = (q.field(), g.n_vars(), g.r);
    if g.entries.iter().any(|e| !e.is_zero() && e.form_degree() != Some(0)) {
        return Err(GaugeError::NotInvertible);
    }
    let constant = g.entries.iter().all(|e| e.terms().keys().all(|(a, _)| a.iter().all(|&x| x == 0)));
    let one = MatrixForm::identity(field, n, r);
    let inverse = if constant {
        let m = Matrix::from_fn(field, r, r, |a, b| g.get(a, b).terms().values().next().cloned().unwrap_or_else(|| Scalar::zero(field)));
        MatrixForm::from_matrix(&m.inverse().map_err(|_| GaugeError::NotInvertible)?, n)
    } else {
        // g = 1 + u with u nilpotent: g^{-1} = Σ_{k<r} (-u)^k
        let minus_u = one.sub(g);
        let mut power = one.clone();
        let mut sum = one.clone();
        for _ in 1..r {
            power = power.mul(&minus_u, q);
            sum = sum.add(&power);
        }
        sum
    };
    if g.mul(&inverse, q) != one {
        return Err(GaugeError::NotInvertible);
    }
    Ok(inverse)
}

/// A random matrix of 1-forms with polynomial coefficients of degree at most 2.
pub fn random_connection(order: u32, n: usize, r: usize, rng: &mut impl Rng) -> Result<QConnection, GaugeError> {
    let q = root_of_unity(order)?;
    let a = MatrixForm::from_fn(r, |_, _| random_form(q.field(), n, 1, 2, rng));
    QConnection::new(a, order)
}

/// `1 + u` with `u` strictly upper triangular with polynomial entries.
pub fn random_unipotent(field: &FieldRef, n: usize, r: usize, rng: &mut impl Rng) -> MatrixForm {
    MatrixForm::from_fn(r, |a, b| match a.cmp(&b) {
        std::cmp::Ordering::Equal => QForm::constant(&Scalar::one(field), n),
        std::cmp::Ordering::Less => random_form(field, n, 0, 2, rng),
        std::cmp::Ordering::Greater => QForm::zero(field, n),
    })
}

/// `tr(F^p)` and its exterior derivative.
pub fn chern_form(f: &MatrixForm, p: u32, q: &Scalar) -> (QForm, QForm) {
    let power = (1..p).fold(f.clone(), |acc, _| acc.mul(f, q));
    let form = power.trace();
    let d = form.exterior_d(q);
    (form, d)
}

/// `tr(d(A)A + q A d(A) + AAA)` on three variables.
pub fn cs_density(a: &MatrixForm, q: &Scalar) -> Result<QForm, GaugeError> {
    if a.n_vars() != 3 {
        return Err(GaugeError::Unsupported(format!("Chern–Simons density needs 3 variables, got {}", a.n_vars())));
    }
    let da = a.d(q);
    Ok(da.mul(a, q).add(&a.mul(&da, q).scale(q)).add(&a.mul(a, q).mul(a, q)).trace())
}

/// Normalization of the divergence expression for `tr(d²A)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceConstant {
    /// `(∂₁∂₂A₃ + q ∂₁∂₃A₂ + q² ∂₂∂₃A₁) ξ₁ξ₂ξ₃`.
    Literal,
    /// The same expression times `1 + q`, which is what `d²` produces.
    Corrected,
}

/// `tr(d²A)` minus the chosen divergence expression.
pub fn divergence_defect(a: &MatrixForm, q: &Scalar, constant: DivergenceConstant) -> Result<QForm, GaugeError> {
    if a.n_vars() != 3 {
        return Err(GaugeError::Unsupported(format!("divergence identity needs 3 variables, got {}", a.n_vars())));
    }
    let comp = |i: usize| a.xi_component(i).trace();
    let q2 = q * q;
    let sum = comp(2)
        .partial_x(0)
        .partial_x(1)
        .add(&comp(1).partial_x(0).partial_x(2).scale(q))
        .add(&comp(0).partial_x(1).partial_x(2).scale(&q2));
    let scale = match constant {
        DivergenceConstant::Literal => Scalar::one(q.field()),
        DivergenceConstant::Corrected => &Scalar::one(q.field()) + q,
    };
    let top = QForm::monomial(&scale, vec![0; 3], vec![0, 1, 2]);
    let expected = top.mul(&sum, q);
    Ok(a.d(q).d(q).trace().sub(&expected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn one_by_one(order: u32, f: QForm) -> QConnection {
        QConnection::new(MatrixForm::from_fn(1, |_, _| f.clone()), order).unwrap()
    }

    #[test]
    fn zero_connection_is_flat() {
        for order in 2..=4 {
            let c = QConnection::zero(order, 2, 2).unwrap();
            assert!(c.curvature().unwrap().is_zero());
        }
    }

    #[test]
    fn rank_one_example_is_flat() {
        let q = root_of_unity(3).unwrap();
        let f = q.field();
        let a = QForm::x(f, 2, 1).mul(&QForm::xi(f, 2, 0), &q);
        let c = one_by_one(3, a.clone());
        assert!(c.frame_curvature().is_zero());
        assert!(c.curvature_formula_n3().unwrap().is_zero());
        let e = VectorForm::basis(f, 2, 1, 0);
        assert_eq!(c.nabla_apply(&e).unwrap().entries()[0], a);
    }

    #[test]
    fn classical_curvature_at_minus_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let c = random_connection(2, 3, 2, &mut rng).unwrap();
            let q = c.q().clone();
            let expected = c.a().d(&q).add(&c.a().mul(c.a(), &q));
            assert_eq!(c.curvature().unwrap(), expected);
        }
    }

    #[test]
    fn order_zero_fails_at_cube_root() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let failures = (0..5)
            .filter(|_| matches!(random_connection(3, 3, 2, &mut rng).unwrap().curvature(), Err(GaugeError::NotOrderZero { .. })))
            .count();
        assert!(failures > 0);
    }

    #[test]
    fn unipotent_gauge_of_zero() {
        let q = root_of_unity(3).unwrap();
        let f = q.field();
        let c = QConnection::zero(3, 2, 2).unwrap();
        let g = MatrixForm::from_fn(2, |a, b| match (a, b) {
            (0, 1) => QForm::x(f, 2, 0),
            _ if a == b => QForm::constant(&Scalar::one(f), 2),
            _ => QForm::zero(f, 2),
        });
        let t = c.gauge_transform(&g).unwrap();
        let expected = MatrixForm::from_fn(2, |a, b| if (a, b) == (0, 1) { QForm::xi(f, 2, 0) } else { QForm::zero(f, 2) });
        assert_eq!(t.a(), &expected);
        assert!(t.frame_curvature().is_zero());
    }

    #[test]
    fn constant_gauge_of_zero_stays_zero() {
        let q = root_of_unity(3).unwrap();
        let m = Matrix::from_int_rows(q.field(), &[&[1, 2], &[3, 5]]);
        let g = MatrixForm::from_matrix(&m, 2);
        let c = QConnection::zero(3, 2, 2).unwrap();
        assert!(c.gauge_transform(&g).unwrap().a().is_zero());
    }

    #[test]
    fn non_invertible_gauge_rejected() {
        let q = root_of_unity(3).unwrap();
        let m = Matrix::from_int_rows(q.field(), &[&[1, 2], &[2, 4]]);
        let c = QConnection::zero(3, 2, 2).unwrap();
        assert_eq!(c.gauge_transform(&MatrixForm::from_matrix(&m, 2)), Err(GaugeError::NotInvertible));
    }

    #[test]
    fn divergence_constant() {
        let q = root_of_unity(3).unwrap();
        let f = q.field();
        // A = x₁x₂ ξ₃
        let a = MatrixForm::from_fn(1, |_, _| QForm::monomial(&Scalar::one(f), vec![1, 1, 0], vec![2]));
        assert!(divergence_defect(&a, &q, DivergenceConstant::Corrected).unwrap().is_zero());
        assert!(!divergence_defect(&a, &q, DivergenceConstant::Literal).unwrap().is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..5 {
            let c = random_connection(3, 3, 2, &mut rng).unwrap();
            assert!(divergence_defect(c.a(), &q, DivergenceConstant::Corrected).unwrap().is_zero());
        }
    }

    #[test]
    fn repr_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = random_connection(3, 2, 2, &mut rng).unwrap();
        let json = serde_json::to_string(&c.to_repr()).unwrap();
        let back: ConnectionRepr = serde_json::from_str(&json).unwrap();
        assert_eq!(QConnection::from_repr(&back).unwrap(), c);
    }
}
