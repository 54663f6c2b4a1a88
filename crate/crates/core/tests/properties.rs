//! Property tests for the algebraic invariants of the library.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qhomalg::complex::root_of_unity;
use qhomalg::cyclo::{field, Scalar};
use qhomalg::delta::random_glued;
use qhomalg::forms::random_form;
use qhomalg::generate::{random_exact, random_invertible, random_ncomplex, Profile};
use qhomalg::homology::homology;
use qhomalg::homops::{q_hom, q_tensor, HomConvention};
use qhomalg::linalg::Matrix;
use qhomalg::qnum::{q_binomial, q_factorial};

const ORDERS: [u32; 7] = [1, 3, 4, 5, 6, 8, 12];

fn scalar(m: u32, coords: &[(i64, i64)]) -> Scalar {
    let f = field(m);
    let phi = Scalar::zero(&f).coords().len();
    let mut c: Vec<BigRational> = coords.iter().take(phi).map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d))).collect();
    c.resize(phi, BigRational::from_integer(BigInt::from(0)));
    Scalar::from_coords(&f, c).expect("coordinate count matches")
}

/// The complex embedding sending ζ to exp(2πi/M).
fn embed(s: &Scalar) -> (f64, f64) {
    let m = s.field().order() as f64;
    s.coords().iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
        let c = c.to_f64().expect("finite");
        let t = 2.0 * PI * k as f64 / m;
        (re + c * t.cos(), im + c * t.sin())
    })
}

fn coords() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..=20, 1i64..=7), 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_matches_complex_embedding(k in 0..ORDERS.len(), a in coords(), b in coords()) {
        let m = ORDERS[k];
        let (x, y) = (scalar(m, &a), scalar(m, &b));
        let (xr, xi) = embed(&x);
        let (yr, yi) = embed(&y);
        let (pr, pi) = embed(&(&x * &y));
        prop_assert!((pr - (xr * yr - xi * yi)).abs() < 1e-6);
        prop_assert!((pi - (xr * yi + xi * yr)).abs() < 1e-6);
    }

    #[test]
    fn field_axioms(k in 0..ORDERS.len(), a in coords(), b in coords(), c in coords()) {
        let m = ORDERS[k];
        let (x, y, z) = (scalar(m, &a), scalar(m, &b), scalar(m, &c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn gaussian_binomial_is_factorial_quotient(n in 0u32..9, k in 0i64..9, num in 2i64..7) {
        // at a rational q > 1 no q-integer vanishes
        let q = Scalar::from_int(&field(1), num);
        prop_assume!(k <= n as i64);
        let lhs = &q_binomial(n, k, &q) * &(&q_factorial(k as u32, &q) * &q_factorial(n - k as u32, &q));
        prop_assert_eq!(lhs, q_factorial(n, &q));
    }

    #[test]
    fn rank_nullity_and_inverse(seed in any::<u64>(), rows in 1usize..5, cols in 1usize..5) {
        let f = field(5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_invertible(&f, rows, &mut rng);
        let b = random_invertible(&f, cols, &mut rng);
        let m = Matrix::from_fn(&f, rows, cols, |r, c| if r == c && r % 2 == 0 { Scalar::one(&f) } else { Scalar::zero(&f) });
        let m = a.mul(&m).mul(&b);
        prop_assert_eq!(m.rank() + m.kernel_basis().dim(), cols);
        prop_assert_eq!(a.mul(&a.inverse().unwrap()), Matrix::identity(&f, rows));
    }

    #[test]
    fn homology_matches_construction(seed in any::<u64>(), order in 2u32..5) {
        let g = random_ncomplex(order, Profile::Small, seed).unwrap();
        let (lo, hi) = g.complex.support().unwrap();
        for p in 1..order {
            for i in lo - 1..=hi + 1 {
                prop_assert_eq!(homology(&g.complex, p, i).unwrap().dim(), g.expected_homology_dim(p, i));
            }
        }
    }

    #[test]
    fn homology_is_basis_invariant(seed in any::<u64>(), order in 2u32..5) {
        let g = random_ncomplex(order, Profile::Small, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 7);
        let bases: BTreeMap<i64, Matrix> = g.complex.dims().iter().map(|(&i, &d)| (i, random_invertible(g.complex.field(), d, &mut rng))).collect();
        let c = g.complex.change_basis(&bases).unwrap();
        let (lo, hi) = c.support().unwrap();
        for p in 1..order {
            for i in lo..=hi {
                prop_assert_eq!(homology(&c, p, i).unwrap().dim(), homology(&g.complex, p, i).unwrap().dim());
            }
        }
    }

    #[test]
    fn exact_complexes_have_vanishing_poincare_value(seed in any::<u64>(), order in 2u32..6) {
        let g = random_exact(order, Profile::Small, seed).unwrap();
        prop_assert!(g.complex.poincare_at_root().unwrap().is_zero());
    }

    #[test]
    fn tensor_and_hom_are_n_complexes(seed in any::<u64>(), order in 2u32..4) {
        let q = root_of_unity(order).unwrap();
        let v = random_ncomplex(order, Profile::Small, seed).unwrap().complex;
        let w = random_ncomplex(order, Profile::Small, seed ^ 1).unwrap().complex;
        prop_assert!(q_tensor(&v, &w, &q).unwrap().complex.check_nilpotent().is_ok());
        prop_assert!(q_hom(&v, &w, &q, HomConvention::DegreeWeighted).unwrap().complex.check_nilpotent().is_ok());
    }

    #[test]
    fn de_rham_differential_is_nilpotent(seed in any::<u64>(), order in 2u32..5, n in 1usize..4, k in 0usize..3) {
        let q = root_of_unity(order).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_form(q.field(), n, k.min(n), 4, &mut rng);
        prop_assert!(u.d_power(order, &q).is_zero());
    }

    #[test]
    fn face_relations_hold(seed in any::<u64>(), n in 2usize..4, k in 0usize..3) {
        let q = root_of_unity(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_form(q.field(), n, k.min(n), 3, &mut rng);
        for i in 0..n {
            for j in i + 1..n {
                prop_assert_eq!(u.face(j).face(i), u.face(i).face(j - 1));
            }
        }
    }

    #[test]
    fn glued_chain_complexes_are_n_complexes(seed in any::<u64>(), order in 2u32..6) {
        let x = random_glued(&mut ChaCha8Rng::seed_from_u64(seed), 3);
        let q = root_of_unity(order).unwrap();
        prop_assert!(x.chain_ncomplex(&q, Some(order)).is_ok());
    }
}
