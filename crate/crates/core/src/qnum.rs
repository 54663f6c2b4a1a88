//! q-integers, q-factorials and Gaussian binomial coefficients.

use std::collections::BTreeMap;

use crate::cyclo::{Scalar, ScalarError};

/// `[n]_q = 1 + q + … + q^{n-1}`.
pub fn q_int(n: u32, q: &Scalar) -> Scalar {
    let mut acc = Scalar::zero(q.field());
    let mut power = Scalar::one(q.field());
    for _ in 0..n {
        acc += &power;
        power = &power * q;
    }
    acc
}

/// `[n!]_q = [1]_q [2]_q … [n]_q`.
pub fn q_factorial(n: u32, q: &Scalar) -> Scalar {
    (1..=n).fold(Scalar::one(q.field()), |acc, k| &acc * &q_int(k, q))
}

/// Gaussian binomial `[n choose k]_q`, zero when `k` is outside `0..=n`.
///
/// Built row by row from `[m+1, k] = [m, k] q^k + [m, k-1]`, which never
/// divides, so it is valid at roots of unity where the quotient formula
/// degenerates.
pub fn q_binomial(n: u32, k: i64, q: &Scalar) -> Scalar {
    if k < 0 || k > n as i64 {
        return Scalar::zero(q.field());
    }
    gaussian_row(n, q).swap_remove(k as usize)
}

/// All of `[n choose 0]_q, …, [n choose n]_q`.
pub fn gaussian_row(n: u32, q: &Scalar) -> Vec<Scalar> {
    let f = q.field();
    let powers: Vec<Scalar> = std::iter::successors(Some(Scalar::one(f)), |p| Some(p * q))
        .take(n as usize + 1)
        .collect();
    let mut row = vec![Scalar::one(f)];
    for m in 0..n as usize {
        let mut next = Vec::with_capacity(m + 2);
        for k in 0..=m + 1 {
            let keep = if k <= m { &row[k] * &powers[k] } else { Scalar::zero(f) };
            let shift = if k >= 1 { row[k - 1].clone() } else { Scalar::zero(f) };
            next.push(keep + shift);
        }
        row = next;
    }
    row
}

/// `Σ c_i q^i` over a finitely supported coefficient map.
pub fn eval_poincare(coeff_by_degree: &BTreeMap<i64, u64>, q: &Scalar) -> Result<Scalar, ScalarError> {
    let mut acc = Scalar::zero(q.field());
    for (&deg, &c) in coeff_by_degree {
        if c == 0 {
            continue;
        }
        let term = q.pow(deg)?;
        acc += &term * &Scalar::from_int(q.field(), c as i64);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::field;

    fn zeta(m: u32) -> Scalar {
        Scalar::primitive_root(&field(m)).unwrap()
    }

    #[test]
    fn q_integers() {
        assert!(q_int(3, &zeta(3)).is_zero());
        let f1 = field(1);
        assert_eq!(q_int(4, &Scalar::one(&f1)), Scalar::from_int(&f1, 4));
        assert_eq!(q_int(3, &Scalar::from_int(&f1, 2)), Scalar::from_int(&f1, 7));
        assert!(q_int(0, &zeta(5)).is_zero());
    }

    #[test]
    fn q_factorials() {
        let f1 = field(1);
        assert_eq!(q_factorial(3, &Scalar::one(&f1)), Scalar::from_int(&f1, 6));
        assert_eq!(q_factorial(3, &Scalar::from_int(&f1, 2)), Scalar::from_int(&f1, 21));
        assert_eq!(q_factorial(0, &zeta(4)), Scalar::one(&field(4)));
        for n in 2..=8 {
            assert!(q_factorial(n, &zeta(n)).is_zero(), "N = {n}");
        }
    }

    #[test]
    fn gaussian_values() {
        let f1 = field(1);
        let two = Scalar::from_int(&f1, 2);
        // [2 choose 1]_q = 1 + q
        assert_eq!(q_binomial(2, 1, &two), Scalar::from_int(&f1, 3));
        assert_eq!(q_binomial(4, 2, &two), Scalar::from_int(&f1, 35));
        assert!(q_binomial(3, 4, &two).is_zero());
        assert!(q_binomial(3, -1, &two).is_zero());
        assert!(q_binomial(6, 0, &zeta(5)).is_one());
        for n in 2..=8u32 {
            let q = zeta(n);
            for k in 1..n as i64 {
                assert!(q_binomial(n, k, &q).is_zero(), "N = {n}, k = {k}");
            }
            assert!(q_binomial(n, 0, &q).is_one());
            assert!(q_binomial(n, n as i64, &q).is_one());
        }
    }

    #[test]
    fn poincare_evaluation() {
        let q = zeta(3);
        let p: BTreeMap<i64, u64> = [(0, 1), (1, 1), (2, 1)].into();
        assert!(eval_poincare(&p, &q).unwrap().is_zero());
        let single: BTreeMap<i64, u64> = [(0, 1)].into();
        assert!(eval_poincare(&single, &q).unwrap().is_one());
        let two: BTreeMap<i64, u64> = [(0, 2), (1, 2)].into();
        assert!(eval_poincare(&two, &zeta(2)).unwrap().is_zero());
        let neg: BTreeMap<i64, u64> = [(-1, 1), (0, 1), (1, 1)].into();
        assert!(eval_poincare(&neg, &q).unwrap().is_zero());
        let f1 = field(1);
        assert_eq!(eval_poincare(&neg, &Scalar::zero(&f1)), Err(ScalarError::DivisionByZero));
    }
}
