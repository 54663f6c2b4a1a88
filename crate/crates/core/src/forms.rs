//! Polynomial q-differential forms on `n` variables.
//!
//! A form is a combination of monomials `x^α ξ_J` with `J` strictly
//! increasing; the `x`'s commute with everything, `ξ_j ξ_i = q ξ_i ξ_j` for
//! `j > i`, and `ξ_i² = 0`. Variable indices are 0-based in this API and
//! 1-based in text and JSON output.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{ComplexError, NComplex};
use crate::cyclo::{make_field, FieldRef, Scalar, ScalarError};
use crate::linalg::Matrix;
use crate::qnum::q_binomial;

/// `(x exponents, increasing ξ indices)`.
pub type Monomial = (Vec<u32>, Vec<usize>);

#[derive(Clone, PartialEq, Eq)]
pub struct QForm {
    field: FieldRef,
    n: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

/// Number of `j ∈ set` with `j < i`.
fn count_below(set: &[usize], i: usize) -> usize {
    set.iter().filter(|&&j| j < i).count()
}

/// Merges `ξ_J ξ_K` into increasing order: `None` if an index repeats,
/// otherwise the merged set and the number of transpositions `(j, k)` with
/// `j ∈ J`, `k ∈ K`, `j > k`.
fn merge_xi(j: &[usize], k: &[usize]) -> Option<(Vec<usize>, usize)> {
    let mut inversions = 0;
    for &a in j {
        for &b in k {
            if a == b {
                return None;
            }
            if a > b {
                inversions += 1;
            }
        }
    }
    let mut merged: Vec<usize> = j.iter().chain(k).copied().collect();
    merged.sort_unstable();
    Some((merged, inversions))
}

impl QForm {
    pub fn zero(field: &FieldRef, n: usize) -> Self {
        QForm { field: field.clone(), n, terms: BTreeMap::new() }
    }

    pub fn constant(c: &Scalar, n: usize) -> Self {
        Self::monomial(c, vec![0; n], vec![])
    }

    /// `c x^α ξ_J` with `J` given as a set of indices (a repeated index gives zero).
    pub fn monomial(c: &Scalar, exps: Vec<u32>, xi: Vec<usize>) -> Self {
        let n = exps.len();
        let mut sorted = xi;
        sorted.sort_unstable();
        let mut f = Self::zero(c.field(), n);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return f;
        }
        assert!(sorted.iter().all(|&i| i < n), "ξ index out of range");
        f.add_term((exps, sorted), c.clone());
        f
    }

    /// The coordinate `x_i`.
    pub fn x(field: &FieldRef, n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Self::monomial(&Scalar::one(field), exps, vec![])
    }

    /// The generator `ξ_i = dx_i`.
    pub fn xi(field: &FieldRef, n: usize, i: usize) -> Self {
        Self::monomial(&Scalar::one(field), vec![0; n], vec![i])
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &QForm) -> QForm {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QForm) -> QForm {
        self.add(&other.scale(&-Scalar::one(&self.field)))
    }

    pub fn scale(&self, s: &Scalar) -> QForm {
        let mut out = QForm::zero(&self.field, self.n);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    /// The form degree if every term has the same number of `ξ`'s.
    pub fn form_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|(_, j)| j.len());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// `(form degree, polynomial degree)` of every term.
    pub fn gradings(&self) -> Vec<(usize, u32)> {
        self.terms.keys().map(|(a, j)| (j.len(), a.iter().sum())).collect()
    }

    /// The product in the q-de Rham algebra.
    pub fn mul(&self, other: &QForm, q: &Scalar) -> QForm {
        assert_eq!(self.n, other.n, "forms on different numbers of variables");
        let mut out = QForm::zero(&self.field, self.n);
        for ((a, j), c) in &self.terms {
            for ((b, k), e) in &other.terms {
                let Some((merged, inv)) = merge_xi(j, k) else { continue };
                let exps = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let coeff = &(c * e) * &q.pow(inv as i64).expect("nonnegative power");
                out.add_term((exps, merged), coeff);
            }
        }
        out
    }

    /// The ordinary partial derivative `∂/∂x_i`.
    pub fn partial_x(&self, i: usize) -> QForm {
        let mut out = QForm::zero(&self.field, self.n);
        for ((a, j), c) in &self.terms {
            if a[i] == 0 {
                continue;
            }
            let mut b = a.clone();
            b[i] -= 1;
            out.add_term((b, j.clone()), c * &Scalar::from_int(&self.field, a[i] as i64));
        }
        out
    }

    /// Left multiplication by `ξ_i`.
    pub fn xi_left(&self, i: usize, q: &Scalar) -> QForm {
        QForm::xi(&self.field, self.n, i).mul(self, q)
    }

    /// `d = Σ_i ξ_i ∂/∂x_i`: `d(f ξ_J) = Σ_i ∂_i f · q^{#{j ∈ J : j < i}} ξ_{J ∪ {i}}`.
    pub fn exterior_d(&self, q: &Scalar) -> QForm {
        let mut out = QForm::zero(&self.field, self.n);
        for ((a, j), c) in &self.terms {
            for i in 0..self.n {
                if a[i] == 0 || j.contains(&i) {
                    continue;
                }
                let mut b = a.clone();
                b[i] -= 1;
                let mut merged = j.clone();
                merged.push(i);
                merged.sort_unstable();
                let weight = q.pow(count_below(j, i) as i64).expect("nonnegative power");
                out.add_term((b, merged), &(c * &Scalar::from_int(&self.field, a[i] as i64)) * &weight);
            }
        }
        out
    }

    pub fn d_power(&self, k: u32, q: &Scalar) -> QForm {
        (0..k).fold(self.clone(), |f, _| f.exterior_d(q))
    }

    /// The left q-derivation `∂/∂ξ_i`: `ξ_J = q^{-c} ξ_i ξ_{J∖i}` with
    /// `c = #{j ∈ J : j < i}`, and `∂/∂ξ_i` removes the leading `ξ_i`.
    pub fn partial_xi(&self, i: usize, q: &Scalar) -> QForm {
        let mut out = QForm::zero(&self.field, self.n);
        for ((a, j), c) in &self.terms {
            if !j.contains(&i) {
                continue;
            }
            let rest: Vec<usize> = j.iter().copied().filter(|&k| k != i).collect();
            let weight = q.pow(-(count_below(j, i) as i64)).expect("root is invertible");
            out.add_term((a.clone(), rest), c * &weight);
        }
        out
    }

    /// `S = Σ_i x_i ∂/∂ξ_i`.
    pub fn s_operator(&self, q: &Scalar) -> QForm {
        let mut out = QForm::zero(&self.field, self.n);
        for i in 0..self.n {
            out = out.add(&QForm::x(&self.field, self.n, i).mul(&self.partial_xi(i, q), q));
        }
        out
    }

    /// The face operator `∂_ν` on forms of degree `n - p - 1`: with
    /// `i_0 < … < i_p` the indices missing from `J`, it sends `f ξ_J` to
    /// `(∂f/∂x_{i_ν}) ξ_{J ∪ {i_ν}}` with unit coefficient.
    ///
    /// Terms for which `ν` exceeds `p` are dropped.
    pub fn face(&self, nu: usize) -> QForm {
        let mut out = QForm::zero(&self.field, self.n);
        for ((a, j), c) in &self.terms {
            let complement: Vec<usize> = (0..self.n).filter(|i| !j.contains(i)).collect();
            let Some(&i) = complement.get(nu) else { continue };
            if a[i] == 0 {
                continue;
            }
            let mut b = a.clone();
            b[i] -= 1;
            let mut merged = j.clone();
            merged.push(i);
            merged.sort_unstable();
            out.add_term((b, merged), c * &Scalar::from_int(&self.field, a[i] as i64));
        }
        out
    }

    /// `Σ_ν q^ν ∂_ν`.
    pub fn face_sum(&self, q: &Scalar) -> QForm {
        let mut out = QForm::zero(&self.field, self.n);
        for nu in 0..self.n {
            out = out.add(&self.face(nu).scale(&q.pow(nu as i64).expect("nonnegative power")));
        }
        out
    }

    /// The diagonal rescaling `x^α ξ_J ↦ q^{-s Σ_i i α_i} x^α ξ_J` (0-based `i`),
    /// with `s = 1` for `inverse = false` and `s = -1` otherwise. It conjugates
    /// the exterior derivative at `q^{-1}` into `Σ_ν q^ν ∂_ν`.
    pub fn rescale_by_position(&self, q: &Scalar, inverse: bool) -> QForm {
        let mut out = QForm::zero(&self.field, self.n);
        for ((a, j), c) in &self.terms {
            let w: i64 = a.iter().enumerate().map(|(i, &e)| i as i64 * e as i64).sum();
            let exp = if inverse { w } else { -w };
            out.add_term((a.clone(), j.clone()), c * &q.pow(exp).expect("root is invertible"));
        }
        out
    }

    pub fn to_repr(&self) -> FormRepr {
        FormRepr {
            n: self.n,
            field_order: Some(self.field.order()),
            terms: self
                .terms
                .iter()
                .map(|((a, j), c)| TermRepr { x: a.clone(), xi: j.iter().map(|i| i + 1).collect(), c: c.clone() })
                .collect(),
        }
    }

    pub fn from_repr(repr: &FormRepr) -> Result<QForm, FormError> {
        let m = match (repr.field_order, repr.terms.first()) {
            (Some(m), _) => m,
            (None, Some(t)) => t.c.field().order(),
            (None, None) => 1,
        };
        let field = make_field(m)?;
        let mut out = QForm::zero(&field, repr.n);
        for (k, t) in repr.terms.iter().enumerate() {
            let bad = |what: &str| FormError::Schema(format!("terms[{k}]: {what}"));
            if t.x.len() != repr.n {
                return Err(bad("exponent list has the wrong length"));
            }
            if t.xi.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad("xi indices must be strictly increasing"));
            }
            if t.xi.iter().any(|&i| i == 0 || i > repr.n) {
                return Err(bad("xi index out of range"));
            }
            if t.c.field() != &field {
                return Err(bad("coefficient lives in a different field"));
            }
            out.add_term((t.x.clone(), t.xi.iter().map(|i| i - 1).collect()), t.c.clone());
        }
        Ok(out)
    }
}

impl fmt::Debug for QForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, j), c)| {
                let mut s = format!("({c})");
                for (i, &e) in a.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!("*x{}", i + 1)),
                        _ => s.push_str(&format!("*x{}^{e}", i + 1)),
                    }
                }
                for i in j {
                    s.push_str(&format!("*xi{}", i + 1));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("malformed form: {0}")]
    Schema(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Serialized form: `{"n": v, "M": m, "terms": [{"x": [...], "xi": [...], "c": scalar}]}`
/// with 1-based `ξ` indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormRepr {
    pub n: usize,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub field_order: Option<u32>,
    pub terms: Vec<TermRepr>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRepr {
    pub x: Vec<u32>,
    pub xi: Vec<usize>,
    pub c: Scalar,
}

/// Exponent tuples of total degree `deg` in `n` variables, `x_1^deg` first.
pub fn exponents(n: usize, deg: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in exponents(n - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Increasing index tuples of length `k` from `0..n`, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Monomial basis of `Ω^k(j)`: forms of degree `k` with polynomial degree `j`,
/// ordered by `ξ` set first and then exponents.
pub fn monomial_basis(n: usize, k: usize, j: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for s in subsets(n, k) {
        for a in exponents(n, j) {
            out.push((a, s.clone()));
        }
    }
    out
}

/// A fixed-total-degree slice of the q-de Rham complex.
#[derive(Debug, Clone)]
pub struct Truncation {
    /// Form degree `k` sits in complex degree `-k`, so the homology cell
    /// `(p, -k)` is the cohomology `_pH^k` of this slice.
    pub complex: NComplex,
    pub bases: BTreeMap<usize, Vec<Monomial>>,
}

/// `Ω^0(m) → Ω^1(m-1) → … → Ω^{min(n,m)}(m - min(n,m))` as an N-complex of order `order`.
///
/// With `validate` the nilpotency of `d^order` is checked.
pub fn truncate_to_ncomplex(n: usize, q: &Scalar, order: u32, m: u32, validate: bool) -> Result<Truncation, FormError> {
    let field = q.field();
    let top = n.min(m as usize);
    let bases: BTreeMap<usize, Vec<Monomial>> = (0..=top).map(|k| (k, monomial_basis(n, k, m - k as u32))).collect();
    let dims = bases.iter().map(|(&k, b)| (-(k as i64), b.len())).collect();
    let mut diffs = BTreeMap::new();
    for k in 0..top {
        let src = &bases[&k];
        let dst = &bases[&(k + 1)];
        let position: BTreeMap<&Monomial, usize> = dst.iter().enumerate().map(|(r, mono)| (mono, r)).collect();
        let mut mat = Matrix::zeros(field, dst.len(), src.len());
        for (col, mono) in src.iter().enumerate() {
            let image = QForm::monomial(&Scalar::one(field), mono.0.clone(), mono.1.clone()).exterior_d(q);
            for (key, c) in image.terms() {
                mat[(position[key], col)] = c.clone();
            }
        }
        diffs.insert(-(k as i64), mat);
    }
    let complex = if validate {
        NComplex::build(field, order, dims, diffs)?
    } else {
        NComplex::assemble(field, order, dims, diffs)?
    };
    Ok(Truncation { complex, bases })
}

/// A random form with coefficients in `-3..=3`, given form degree and
/// polynomial degree at most `max_poly`.
pub fn random_form(field: &FieldRef, n: usize, form_degree: usize, max_poly: u32, rng: &mut impl Rng) -> QForm {
    let mut f = QForm::zero(field, n);
    let terms = rng.gen_range(1..=3);
    let sets = subsets(n, form_degree);
    if sets.is_empty() {
        return f;
    }
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_poly);
        let exps = exponents(n, deg);
        let a = exps[rng.gen_range(0..exps.len())].clone();
        let j = sets[rng.gen_range(0..sets.len())].clone();
        let c = Scalar::from_int(field, rng.gen_range(-3..=3));
        f.add_term((a, j), c);
    }
    f
}

/// A random form in `x_1` and `ξ_1` alone, of form degree 0 or 1. Every
/// `d^p` of such a form stays in that subalgebra, and the q-Leibniz rule
/// holds for it on the left of any form.
pub fn random_first_variable_form(field: &FieldRef, n: usize, form_degree: usize, max_poly: u32, rng: &mut impl Rng) -> QForm {
    assert!(form_degree <= 1 && n >= 1, "form degree must be 0 or 1");
    let mut f = QForm::zero(field, n);
    for _ in 0..rng.gen_range(1..=3) {
        let mut a = vec![0; n];
        a[0] = rng.gen_range(0..=max_poly);
        let j = if form_degree == 1 { vec![0] } else { vec![] };
        f.add_term((a, j), Scalar::from_int(field, rng.gen_range(-3..=3)));
    }
    f
}

/// `d(uv) - (d(u) v + q^{deg u} u d(v))` for homogeneous `u`.
pub fn leibniz_defect(u: &QForm, v: &QForm, q: &Scalar) -> QForm {
    let i = u.form_degree().unwrap_or(0);
    let lhs = u.mul(v, q).exterior_d(q);
    let rhs = u
        .exterior_d(q)
        .mul(v, q)
        .add(&u.mul(&v.exterior_d(q), q).scale(&q.pow(i as i64).expect("nonnegative power")));
    lhs.sub(&rhs)
}

/// Which exponent to use in the expansion of `d^N(uv)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerLeibnizForm {
    /// `Σ_p q^{ip} [N p]_q d^p(u) d^{N-p}(v)`.
    Uncorrected,
    /// `Σ_p q^{i(N-p)} [N p]_q d^p(u) d^{N-p}(v)`, which reduces to the
    /// q-Leibniz rule at `N = 1`.
    Corrected,
}

/// `d^N(uv)` minus the chosen expansion, for homogeneous `u` of degree `i`.
pub fn power_leibniz_defect(u: &QForm, v: &QForm, big_n: u32, q: &Scalar, form: PowerLeibnizForm) -> QForm {
    let i = u.form_degree().unwrap_or(0) as i64;
    let lhs = u.mul(v, q).d_power(big_n, q);
    let mut rhs = QForm::zero(u.field(), u.n_vars());
    for p in 0..=big_n {
        let exp = match form {
            PowerLeibnizForm::Uncorrected => i * p as i64,
            PowerLeibnizForm::Corrected => i * (big_n - p) as i64,
        };
        let coeff = &q.pow(exp).expect("nonnegative power") * &q_binomial(big_n, p as i64, q);
        if coeff.is_zero() {
            continue;
        }
        rhs = rhs.add(&u.d_power(p, q).mul(&v.d_power(big_n - p, q), q).scale(&coeff));
    }
    lhs.sub(&rhs)
}

/// One cell `_pH^k` of a total-degree slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingCell {
    pub total_degree: u32,
    pub p: u32,
    pub form_degree: usize,
    pub dim: usize,
    /// Whether `k + p + 1 ≤ N`, where vanishing is expected.
    pub in_range: bool,
}

/// Computes `_pH^k` of every slice of total degree `0..=max_total` for
/// `1 ≤ p ≤ N-1`. Total degree 0 is included so the constants cell is visible.
pub fn vanishing_table(n: usize, q: &Scalar, order: u32, max_total: u32) -> Result<Vec<VanishingCell>, FormError> {
    let mut out = Vec::new();
    for m in 0..=max_total {
        let t = truncate_to_ncomplex(n, q, order, m, true)?;
        for p in 1..order {
            for k in 0..=n.min(m as usize) {
                let dim = crate::homology::homology(&t.complex, p, -(k as i64))?.dim();
                out.push(VanishingCell { total_degree: m, p, form_degree: k, dim, in_range: k + (p as usize) < order as usize });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::root_of_unity;
    use crate::cyclo::field;

    fn monos(f: &FieldRef, n: usize, exps: Vec<u32>, xi: Vec<usize>) -> QForm {
        QForm::monomial(&Scalar::one(f), { let mut e = exps; e.resize(n, 0); e }, xi)
    }

    #[test]
    fn first_variable_forms_satisfy_leibniz() {
        use rand::SeedableRng;
        let q = root_of_unity(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for k in 0..30 {
            let u = random_first_variable_form(q.field(), 3, k % 2, 3, &mut rng);
            let v = random_form(q.field(), 3, k % 3, 2, &mut rng);
            for p in 0..3 {
                assert!(leibniz_defect(&u.d_power(p, &q), &v, &q).is_zero());
            }
        }
    }

    #[test]
    fn power_expansion_exponent_by_hand() {
        // d(ξ₁x₂) = q ξ₁ξ₂: the u d(v) term carries q^{deg u}
        let q = root_of_unity(3).unwrap();
        let f = q.field().clone();
        let u = monos(&f, 2, vec![], vec![0]);
        let v = monos(&f, 2, vec![0, 1], vec![]);
        let d = u.mul(&v, &q).exterior_d(&q);
        assert_eq!(d, monos(&f, 2, vec![], vec![0, 1]).scale(&q));
        assert!(power_leibniz_defect(&u, &v, 1, &q, PowerLeibnizForm::Corrected).is_zero());
        assert!(!power_leibniz_defect(&u, &v, 1, &q, PowerLeibnizForm::Uncorrected).is_zero());
    }

    #[test]
    fn products() {
        let q = root_of_unity(3).unwrap();
        let f = q.field().clone();
        let x1 = QForm::xi(&f, 2, 0);
        let x2 = QForm::xi(&f, 2, 1);
        assert_eq!(x2.mul(&x1, &q), monos(&f, 2, vec![], vec![0, 1]).scale(&q));
        assert!(x1.mul(&x1, &q).is_zero());
        let a = QForm::x(&f, 2, 0).mul(&x1, &q);
        let b = QForm::x(&f, 2, 1).mul(&x2, &q);
        assert_eq!(a.mul(&b, &q), monos(&f, 2, vec![1, 1], vec![0, 1]));
    }

    #[test]
    fn differentials() {
        let f = field(1);
        let q = Scalar::from_int(&f, 5);
        assert_eq!(QForm::x(&f, 2, 0).exterior_d(&q), QForm::xi(&f, 2, 0));
        assert_eq!(monos(&f, 2, vec![1, 0], vec![1]).exterior_d(&q), monos(&f, 2, vec![], vec![0, 1]));
        let x1x2 = monos(&f, 2, vec![1, 1], vec![]);
        assert_eq!(x1x2.d_power(2, &q), monos(&f, 2, vec![], vec![0, 1]).scale(&Scalar::from_int(&f, 6)));
        let z3 = root_of_unity(3).unwrap();
        let y = monos(z3.field(), 2, vec![1, 1], vec![]);
        assert!(!y.d_power(2, &z3).is_zero());
        assert!(y.d_power(3, &z3).is_zero());
        let z2 = root_of_unity(2).unwrap();
        assert!(monos(z2.field(), 2, vec![1, 1], vec![]).d_power(2, &z2).is_zero());
    }

    #[test]
    fn derivations() {
        let f = field(1);
        let q = Scalar::from_int(&f, 2);
        let w = monos(&f, 2, vec![], vec![0, 1]);
        assert_eq!(w.partial_xi(0, &q), QForm::xi(&f, 2, 1));
        assert_eq!(w.partial_xi(1, &q), QForm::xi(&f, 2, 0).scale(&Scalar::from_ratio(&f, 1, 2)));
        let v = monos(&f, 2, vec![2, 0], vec![1]);
        assert_eq!(v.partial_x(0), monos(&f, 2, vec![1, 0], vec![1]).scale(&Scalar::from_int(&f, 2)));
        let sum = (0..2).fold(QForm::zero(&f, 2), |acc, i| acc.add(&v.partial_x(i).xi_left(i, &q)));
        assert_eq!(sum, v.exterior_d(&q));
    }

    #[test]
    fn leibniz_counterexample() {
        let q = root_of_unity(3).unwrap();
        let f = q.field().clone();
        let defect = leibniz_defect(&QForm::xi(&f, 2, 1), &QForm::x(&f, 2, 0), &q);
        assert!(!defect.is_zero());
        let z2 = root_of_unity(2).unwrap();
        let g = z2.field().clone();
        assert!(leibniz_defect(&QForm::xi(&g, 2, 1), &QForm::x(&g, 2, 0), &z2).is_zero());
    }

    #[test]
    fn truncations() {
        let q = root_of_unity(3).unwrap();
        let t = truncate_to_ncomplex(2, &q, 3, 0, true).unwrap();
        assert_eq!(t.complex.dims(), &[(0, 1)].into());
        let t = truncate_to_ncomplex(2, &q, 3, 1, true).unwrap();
        assert_eq!(t.complex.diff(0), Matrix::identity(q.field(), 2));
        for m in 0..=5 {
            assert!(truncate_to_ncomplex(3, &q, 3, m, true).is_ok());
        }
    }

    #[test]
    fn faces_versus_differential() {
        let q = root_of_unity(3).unwrap();
        let f = q.field().clone();
        let w = monos(&f, 2, vec![0, 1], vec![0]);
        assert_eq!(w.face_sum(&q), monos(&f, 2, vec![], vec![0, 1]));
        assert_eq!(w.exterior_d(&q), monos(&f, 2, vec![], vec![0, 1]).scale(&q));
        let qi = q.inv().unwrap();
        let conj = w.rescale_by_position(&q, true).exterior_d(&qi).rescale_by_position(&q, false);
        assert_eq!(conj, w.face_sum(&q));
    }

    #[test]
    fn constants_cell() {
        let q = root_of_unity(2).unwrap();
        let table = vanishing_table(2, &q, 2, 3).unwrap();
        for c in &table {
            let expected = if c.total_degree == 0 { 1 } else { 0 };
            assert_eq!(c.dim, expected, "{c:?}");
        }
    }

    #[test]
    fn json_round_trip() {
        let q = root_of_unity(4).unwrap();
        let w = monos(q.field(), 3, vec![2, 0, 1], vec![0, 2]).scale(&q);
        let text = serde_json::to_string(&w.to_repr()).unwrap();
        assert!(text.contains("\"xi\":[1,3]"));
        assert_eq!(QForm::from_repr(&serde_json::from_str(&text).unwrap()).unwrap(), w);
    }
}
