//! q-integers, q-factorials and Gaussian binomials at roots of unity and
//! at sampled values.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{CheckRecord, SuiteConfig};
use crate::complex::root_of_unity;
use crate::cyclo::{make_field, Scalar};
use crate::qnum::{gaussian_row, q_binomial, q_factorial};

/// Number of inversions of every permutation of `0..n`.
pub(crate) fn inversion_counts(n: usize) -> Vec<usize> {
    fn extend(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<usize>) {
        if prefix.len() == n {
            let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| prefix[i] > prefix[j]).count();
            out.push(inv);
            return;
        }
        for v in 0..n {
            if !prefix.contains(&v) {
                prefix.push(v);
                extend(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), n, &mut out);
    out
}

pub fn run(config: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for n in config.orders(&[2, 3, 4, 5, 6, 7, 8]) {
        let Ok(z) = root_of_unity(n) else { continue };
        let fact = q_factorial(n, &z);
        out.push(CheckRecord::from_witness(
            format!("qcomb.factorial-vanishes.N{n}"),
            "[N]_q! = 0 at a primitive N-th root",
            format!("q = ζ_{n}"),
            (!fact.is_zero()).then(|| json!({ "value": fact.to_string() })),
        ));
        let row = gaussian_row(n, &z);
        let bad = (1..n as usize).find(|&k| !row[k].is_zero());
        out.push(CheckRecord::from_witness(
            format!("qcomb.binomial-vanishes.N{n}"),
            "[N choose k]_q = 0 for 0 < k < N at a primitive N-th root",
            format!("q = ζ_{n}"),
            bad.map(|k| json!({ "k": k, "value": row[k].to_string() })),
        ));
    }
    let field = make_field(5).expect("valid order");
    let mut rng = ChaCha8Rng::seed_from_u64(config.instance_seed("qcomb.sample", 0));
    let samples: Vec<Scalar> = (0..3)
        .map(|_| loop {
            let z = Scalar::primitive_root(&field).expect("order 5");
            let q = (0..4).fold(Scalar::zero(&field), |acc, k| {
                acc + Scalar::from_int(&field, rng.gen_range(-3..=3)) * z.pow(k).expect("nonnegative power")
            });
            if !q.is_zero() {
                break q;
            }
        })
        .collect();
    for n in 1..=5usize {
        let counts = inversion_counts(n);
        let bad = samples.iter().find_map(|q| {
            let sum = counts.iter().fold(Scalar::zero(&field), |acc, &k| &acc + &q.pow(k as i64).expect("nonnegative power"));
            let fact = q_factorial(n as u32, q);
            (sum != fact).then(|| json!({ "q": q.to_string(), "factorial": fact.to_string(), "inversion_sum": sum.to_string() }))
        });
        out.push(CheckRecord::from_witness(
            format!("qcomb.factorial-inversions.n{n}"),
            "[n]_q! equals the inversion generating function of S_n",
            "3 sampled q in Q(ζ_5)",
            bad,
        ));
    }
    // Pascal recursion in the other direction, at a rational q
    let q = Scalar::from_int(&make_field(1).expect("valid order"), 3);
    let bad = (1..=8u32).flat_map(|n| (1..n as i64).map(move |k| (n, k))).find(|&(n, k)| {
        let lhs = q_binomial(n, k, &q);
        let rhs = &q_binomial(n - 1, k - 1, &q) * &q.pow(n as i64 - k).expect("nonnegative power") + q_binomial(n - 1, k, &q);
        lhs != rhs
    });
    out.push(CheckRecord::from_witness(
        "qcomb.pascal-dual",
        "[n k]_q = q^{n-k}[n-1 k-1]_q + [n-1 k]_q",
        "q = 3, n ≤ 8",
        bad.map(|(n, k)| json!({ "n": n, "k": k })),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inversions_of_small_groups() {
        assert_eq!(inversion_counts(3).iter().filter(|&&k| k == 1).count(), 2);
        assert_eq!(inversion_counts(4).len(), 24);
        assert_eq!(inversion_counts(4).iter().sum::<usize>(), 72);
    }
}
