//! Seeded random N-complexes with known homology.
//!
//! Every instance is a direct sum of identity chains, conjugated degreewise
//! by random invertible matrices, so its homology is known in advance.

use std::collections::BTreeMap;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{elementary_chain, ComplexError, NComplex};
use crate::cyclo::{make_field, FieldRef, Scalar};
use crate::linalg::Matrix;

/// Size presets for generated instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Small,
    Medium,
}

impl Profile {
    /// Highest top degree of a generated chain (bottom degree is 0).
    pub fn max_degree(self) -> i64 {
        match self {
            Profile::Small => 5,
            Profile::Medium => 9,
        }
    }

    /// Largest dimension of a single chain.
    pub fn max_chain_dim(self) -> usize {
        match self {
            Profile::Small => 2,
            Profile::Medium => 3,
        }
    }

    pub fn chain_count(self) -> std::ops::RangeInclusive<usize> {
        match self {
            Profile::Small => 1..=3,
            Profile::Medium => 2..=5,
        }
    }
}

impl FromStr for Profile {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "small" => Ok(Profile::Small),
            "medium" => Ok(Profile::Medium),
            other => Err(format!("unknown profile {other:?} (expected small or medium)")),
        }
    }
}

impl std::fmt::Display for Profile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Profile::Small => "small",
            Profile::Medium => "medium",
        })
    }
}

/// One identity chain inside a generated complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainSummand {
    pub top: i64,
    pub length: u32,
    pub dim: usize,
}

impl ChainSummand {
    /// `dim _pH_i` of this chain alone: for a chain of length `ℓ` occupying
    /// positions `j = 0..ℓ-1` counted from the bottom, the class of position
    /// `j` survives iff `j < p` and `j + N - p > ℓ - 1`.
    pub fn homology_dim(&self, order: u32, p: u32, i: i64) -> usize {
        let bottom = self.top - self.length as i64 + 1;
        if i < bottom || i > self.top {
            return 0;
        }
        let j = i - bottom;
        let (p, n, l) = (p as i64, order as i64, self.length as i64);
        if j < p && j + n - p > l - 1 {
            self.dim
        } else {
            0
        }
    }
}

/// A generated complex together with the chains it was built from.
#[derive(Debug, Clone)]
pub struct Generated {
    pub complex: NComplex,
    pub summands: Vec<ChainSummand>,
}

impl Generated {
    /// The homology dimension predicted by the chain decomposition.
    pub fn expected_homology_dim(&self, p: u32, i: i64) -> usize {
        self.summands.iter().map(|s| s.homology_dim(self.complex.order(), p, i)).sum()
    }
}

fn random_scalar(field: &FieldRef, rng: &mut impl Rng) -> Scalar {
    let c = Scalar::from_int(field, rng.gen_range(-2..=2));
    if field.order() > 2 && rng.gen_bool(0.5) {
        let z = Scalar::primitive_root(field).expect("order > 2");
        &c * &z.pow(rng.gen_range(1..field.order() as i64)).expect("root is invertible")
    } else {
        c
    }
}

/// A random invertible matrix: a permutation times lower and upper
/// unitriangular factors with small entries.
pub fn random_invertible(field: &FieldRef, n: usize, rng: &mut impl Rng) -> Matrix {
    let mut lower = Matrix::identity(field, n);
    let mut upper = Matrix::identity(field, n);
    for r in 0..n {
        for c in 0..r {
            lower[(r, c)] = random_scalar(field, rng);
            upper[(c, r)] = random_scalar(field, rng);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let p = Matrix::from_fn(field, n, n, |r, c| {
        if perm[r] == c {
            Scalar::one(field)
        } else {
            Scalar::zero(field)
        }
    });
    p.mul(&lower).mul(&upper)
}

fn assemble(field: &FieldRef, order: u32, summands: Vec<ChainSummand>, rng: &mut impl Rng) -> Result<Generated, ComplexError> {
    let mut complex = NComplex::build(field, order, BTreeMap::new(), BTreeMap::new())?;
    for s in &summands {
        complex = complex.direct_sum(&elementary_chain(field, order, s.top, s.length, s.dim)?)?;
    }
    let bases: BTreeMap<i64, Matrix> =
        complex.dims().iter().map(|(&i, &d)| (i, random_invertible(field, d, rng))).collect();
    let complex = complex.change_basis(&bases)?;
    complex.check_nilpotent()?;
    Ok(Generated { complex, summands })
}

fn random_chain(length: u32, profile: Profile, rng: &mut impl Rng) -> ChainSummand {
    let top = rng.gen_range(length as i64 - 1..=profile.max_degree().max(length as i64 - 1));
    ChainSummand { top, length, dim: rng.gen_range(1..=profile.max_chain_dim()) }
}

/// An N-exact complex over `field`: a sum of full-length chains.
pub fn random_exact_in(field: &FieldRef, order: u32, profile: Profile, rng: &mut impl Rng) -> Result<Generated, ComplexError> {
    let count = rng.gen_range(profile.chain_count());
    let summands = (0..count).map(|_| random_chain(order, profile, rng)).collect();
    assemble(field, order, summands, rng)
}

/// An N-complex with controlled homology: full chains plus at least one
/// truncated chain (length below `N`) when `N > 1`.
pub fn random_ncomplex_in(field: &FieldRef, order: u32, profile: Profile, rng: &mut impl Rng) -> Result<Generated, ComplexError> {
    let full = rng.gen_range(0..=*profile.chain_count().end() - 1);
    let truncated = rng.gen_range(1..=2usize);
    let mut summands: Vec<ChainSummand> = (0..full).map(|_| random_chain(order, profile, rng)).collect();
    for _ in 0..truncated {
        let length = if order > 1 { rng.gen_range(1..order) } else { 1 };
        summands.push(random_chain(length, profile, rng));
    }
    assemble(field, order, summands, rng)
}

/// Seeded [`random_exact_in`] over `Q(ζ_N)`.
pub fn random_exact(order: u32, profile: Profile, seed: u64) -> Result<Generated, ComplexError> {
    let field = make_field(order)?;
    random_exact_in(&field, order, profile, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Seeded [`random_ncomplex_in`] over `Q(ζ_N)`.
pub fn random_ncomplex(order: u32, profile: Profile, seed: u64) -> Result<Generated, ComplexError> {
    let field = make_field(order)?;
    random_ncomplex_in(&field, order, profile, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{homology, is_n_exact};

    #[test]
    fn invertible_matrices_invert() {
        let f = make_field(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 0..5 {
            let m = random_invertible(&f, n, &mut rng);
            assert_eq!(m.rank(), n);
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = random_ncomplex(3, Profile::Small, 9).unwrap();
        let b = random_ncomplex(3, Profile::Small, 9).unwrap();
        assert_eq!(a.complex, b.complex);
    }

    #[test]
    fn exact_instances_are_exact() {
        for seed in 0..5 {
            let g = random_exact(3, Profile::Small, seed).unwrap();
            assert!(is_n_exact(&g.complex).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn truncated_chain_oracle() {
        for seed in 0..5 {
            let g = random_ncomplex(4, Profile::Small, seed).unwrap();
            let (lo, hi) = g.complex.support().unwrap();
            for p in 1..=4 {
                for i in lo..=hi {
                    assert_eq!(
                        homology(&g.complex, p, i).unwrap().dim(),
                        g.expected_homology_dim(p, i),
                        "seed {seed}, p {p}, i {i}"
                    );
                }
            }
        }
    }
}
