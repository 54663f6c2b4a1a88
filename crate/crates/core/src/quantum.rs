//! Quadratic relations of the coordinate algebra of quantum `n × n` matrices
//! acting on the q-de Rham algebra, checked in degree 2.
//!
//! The degree-2 part of the free algebra on the generators `a_ij` has basis
//! `a_ij a_kl`, indexed by `(i, j, k, l)` in lexicographic order.

use crate::cyclo::{FieldRef, Scalar};
use crate::linalg::{subquotient, LinalgError, Matrix, Subspace};

/// Index of the generator `a_ij` (0-based).
fn gen(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// Index of the word `a_ij a_kl` in the degree-2 space.
pub fn word(n: usize, (i, j): (usize, usize), (k, l): (usize, usize)) -> usize {
    gen(n, i, j) * n * n + gen(n, k, l)
}

/// A vector in the degree-2 space.
fn zero_vec(field: &FieldRef, n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(field); n.pow(4)]
}

/// Which way the generators transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoactionSide {
    /// `x_j ↦ Σ_i a_ij x_i` and `ξ_j ↦ Σ_i a_ij ξ_i`: both by columns, as
    /// required for the coaction to commute with `d`.
    Columns,
    /// `x_j ↦ Σ_i a_ij x_i` but `ξ_i ↦ Σ_j a_ij ξ_j` (rows on the `ξ` side).
    RowsOnForms,
}

impl CoactionSide {
    /// Coefficient of `ξ_i` in the image of `ξ_j`, as a generator index.
    fn xi_coefficient(self, n: usize, i: usize, j: usize) -> usize {
        match self {
            CoactionSide::Columns => gen(n, i, j),
            CoactionSide::RowsOnForms => gen(n, j, i),
        }
    }
}

/// The coefficients, in the degree-2 space, of the images of the defining
/// relations of the polynomial and `ξ` algebras, after reducing the form
/// side to normal monomials.
///
/// `x`-side: for `j < l`, `X_j X_l - X_l X_j` with `X_j = Σ_i a_ij x_i`.
/// `ξ`-side: for `j > l`, `Ξ_j Ξ_l - q Ξ_l Ξ_j`, and `Ξ_j Ξ_j`.
pub fn coaction_relation_vectors(n: usize, q: &Scalar, side: CoactionSide) -> Vec<Vec<Scalar>> {
    let field = q.field();
    let one = Scalar::one(field);
    let mut out = Vec::new();
    // x-side: x's commute, normal monomials x_i x_k with i <= k
    for j in 0..n {
        for l in j + 1..n {
            for i in 0..n {
                for k in i..n {
                    let mut v = zero_vec(field, n);
                    // X_j X_l contributes a_ij a_kl and a_kj a_il; subtract X_l X_j
                    let mut add = |w: usize, c: &Scalar| v[w] += c;
                    add(word(n, (i, j), (k, l)), &one);
                    add(word(n, (i, l), (k, j)), &-&one);
                    if i != k {
                        add(word(n, (k, j), (i, l)), &one);
                        add(word(n, (k, l), (i, j)), &-&one);
                    }
                    if v.iter().any(|c| !c.is_zero()) {
                        out.push(v);
                    }
                }
            }
        }
    }
    // ξ-side: ξ_k ξ_i = q ξ_i ξ_k for k > i, ξ_i ξ_i = 0
    let xi_product = |j: usize, l: usize, v: &mut Vec<Scalar>, scale: &Scalar| {
        for i in 0..n {
            for k in 0..n {
                if i == k {
                    continue;
                }
                let (lo, hi) = (i.min(k), i.max(k));
                let w = side.xi_coefficient(n, i, j) * n * n + side.xi_coefficient(n, k, l);
                let c = if i < k { scale.clone() } else { scale * q };
                // coefficient of ξ_lo ξ_hi, stored per (lo, hi) block by caller
                v[(lo * n + hi) * n.pow(4) + w] += &c;
            }
        }
    };
    let blocks = n * n;
    let mut push_blocks = |v: Vec<Scalar>| {
        for b in 0..blocks {
            let chunk = v[b * n.pow(4)..(b + 1) * n.pow(4)].to_vec();
            if chunk.iter().any(|c| !c.is_zero()) {
                out.push(chunk);
            }
        }
    };
    for j in 0..n {
        for l in 0..=j {
            let mut v = vec![Scalar::zero(field); blocks * n.pow(4)];
            xi_product(j, l, &mut v, &one);
            if l < j {
                xi_product(l, j, &mut v, &-q);
            }
            push_blocks(v);
        }
    }
    out
}

/// The span of the relations obtained by requiring the transformed
/// coordinates and differentials to satisfy the same commutation rules.
pub fn relations_from_covariance(n: usize, q: &Scalar) -> Subspace {
    Subspace::span(q.field(), n.pow(4), &coaction_relation_vectors(n, q, CoactionSide::Columns))
}

/// One term `c a_ij a_kl` of a relation.
type Term = ((usize, usize), (usize, usize), Scalar);

/// The listed relations: `a_ij a_ik = a_ik a_ij` for all `i, j, k`;
/// `a_ij a_kj = q a_kj a_ij` for `i < k`; and for `i < j`
/// `a_ii a_jj - a_jj a_ii = a_ji a_ij - a_ij a_ji = q^{-1} a_ij a_ji - q a_ji a_ij`.
pub fn listed_relation_vectors(n: usize, q: &Scalar) -> Vec<Vec<Scalar>> {
    let field = q.field();
    let one = Scalar::one(field);
    let q_inv = q.inv().expect("q is nonzero");
    let mut out = Vec::new();
    let mut push = |terms: &[Term]| {
        let mut v = zero_vec(field, n);
        for (a, b, c) in terms {
            v[word(n, *a, *b)] += c;
        }
        if v.iter().any(|c| !c.is_zero()) {
            out.push(v);
        }
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                push(&[((i, j), (i, k), one.clone()), ((i, k), (i, j), -&one)]);
            }
        }
    }
    for j in 0..n {
        for i in 0..n {
            for k in i + 1..n {
                push(&[((i, j), (k, j), one.clone()), ((k, j), (i, j), -q)]);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            push(&[
                ((i, i), (j, j), one.clone()),
                ((j, j), (i, i), -&one),
                ((j, i), (i, j), -&one),
                ((i, j), (j, i), one.clone()),
            ]);
            push(&[
                ((j, i), (i, j), one.clone()),
                ((i, j), (j, i), -&one),
                ((i, j), (j, i), -&q_inv),
                ((j, i), (i, j), q.clone()),
            ]);
        }
    }
    out
}

pub fn listed_relations(n: usize, q: &Scalar) -> Subspace {
    Subspace::span(q.field(), n.pow(4), &listed_relation_vectors(n, q))
}

/// The image of `Σ c_{ijkl} a_ij a_kl` under `Δ(a_ij) = Σ_s a_is ⊗ a_sj`, as
/// an `n⁴ × n⁴` matrix indexed by (left word, right word).
pub fn comultiply(n: usize, r: &[Scalar]) -> Matrix {
    let field = r[0].field().clone();
    let mut m = Matrix::zeros(&field, n.pow(4), n.pow(4));
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let c = &r[word(n, (i, j), (k, l))];
                    if c.is_zero() {
                        continue;
                    }
                    for s in 0..n {
                        for t in 0..n {
                            m[(word(n, (i, s), (k, t)), word(n, (s, j), (t, l)))] += c;
                        }
                    }
                }
            }
        }
    }
    m
}

/// Whether `Δ(r) ∈ I ⊗ F₂ + F₂ ⊗ I` for every given `r`, with `I` the span
/// of `relations`. Returns the index of the first failing relation.
pub fn comultiplication_failure(n: usize, relations: &[Vec<Scalar>], field: &FieldRef) -> Result<Option<usize>, LinalgError> {
    let dim = n.pow(4);
    let ideal = Subspace::span(field, dim, relations);
    let quotient = subquotient(Subspace::full(field, dim), ideal)?;
    let projection = quotient.coordinates(&Matrix::identity(field, dim))?;
    for (idx, r) in relations.iter().enumerate() {
        let delta = comultiply(n, r);
        if !projection.mul(&delta).mul(&projection.transpose()).is_zero() {
            return Ok(Some(idx));
        }
    }
    Ok(None)
}

/// Whether the coaction maps every defining relation of the form algebra
/// into `I ⊗ Ω`: returns the first relation coefficient outside `I`.
pub fn coaction_failure(n: usize, q: &Scalar, ideal: &Subspace, side: CoactionSide) -> Option<Vec<Scalar>> {
    coaction_relation_vectors(n, q, side).into_iter().find(|v| !ideal.contains_vector(v))
}

/// Checks `α(d x_j) = (1 ⊗ d) α(x_j)` on generators: the coefficient of
/// `ξ_i` on the left is the generator attached to `ξ_i` in `α(ξ_j)`, on the
/// right it is `a_ij` from `α(x_j)`. Returns the first `(i, j)` that differs.
pub fn differential_generator_failure(n: usize, side: CoactionSide) -> Option<(usize, usize)> {
    (0..n).flat_map(|j| (0..n).map(move |i| (i, j))).find(|&(i, j)| side.xi_coefficient(n, i, j) != gen(n, i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::root_of_unity;
    use crate::cyclo::field;

    #[test]
    fn one_by_one() {
        let q = root_of_unity(3).unwrap();
        assert_eq!(relations_from_covariance(1, &q).dim(), 0);
        assert_eq!(comultiplication_failure(1, &[], q.field()).unwrap(), None);
        assert!(coaction_failure(1, &q, &Subspace::zero(q.field(), 1), CoactionSide::Columns).is_none());
    }

    #[test]
    fn derived_relations_two_by_two() {
        let q = root_of_unity(3).unwrap();
        let f = q.field();
        let rel = relations_from_covariance(2, &q);
        // a_12 a_21 + q a_21 a_12 (0-based: a_01, a_10)
        let mut v = vec![Scalar::zero(f); 16];
        v[word(2, (0, 1), (1, 0))] = Scalar::one(f);
        v[word(2, (1, 0), (0, 1))] = q.clone();
        assert!(rel.contains_vector(&v));
        // row commutation a_11 a_12 = a_12 a_11
        let mut w = vec![Scalar::zero(f); 16];
        w[word(2, (0, 0), (0, 1))] = Scalar::one(f);
        w[word(2, (0, 1), (0, 0))] = -Scalar::one(f);
        assert!(rel.contains_vector(&w));
    }

    #[test]
    fn comultiplication_respects_derived_relations() {
        for m in [3, 4] {
            let q = root_of_unity(m).unwrap();
            let rels = coaction_relation_vectors(2, &q, CoactionSide::Columns);
            assert_eq!(comultiplication_failure(2, &rels, q.field()).unwrap(), None);
        }
        let q = Scalar::from_int(&field(1), 2);
        let rels = coaction_relation_vectors(2, &q, CoactionSide::Columns);
        assert_eq!(comultiplication_failure(2, &rels, q.field()).unwrap(), None);
    }

    #[test]
    fn coaction_sides() {
        let q = root_of_unity(3).unwrap();
        let ideal = relations_from_covariance(2, &q);
        assert!(coaction_failure(2, &q, &ideal, CoactionSide::Columns).is_none());
        assert!(coaction_failure(2, &q, &ideal, CoactionSide::RowsOnForms).is_some());
        assert_eq!(differential_generator_failure(2, CoactionSide::Columns), None);
        assert!(differential_generator_failure(2, CoactionSide::RowsOnForms).is_some());
    }
}
