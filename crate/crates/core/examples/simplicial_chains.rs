//! The q-deformed boundary d_q = Σ q^i ∂_i of a Δ-set is an N-complex at a
//! primitive N-th root of unity, and only then.

use qhomalg::complex::root_of_unity;
use qhomalg::cyclo::{field, Scalar};
use qhomalg::delta::{builtin, random_glued, DeltaSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = builtin("delta3")?;
    println!("Δ³ cells per dimension: {:?}", x.counts());
    for n in 2..=4 {
        let q = root_of_unity(n)?;
        let c = x.chain_ncomplex(&q, Some(n))?;
        println!("q = ζ_{n}: chain complex is a {n}-complex with dimensions {:?}", c.dims());
    }
    // at q = ζ_4 the boundary is not nilpotent of order 3
    let q = root_of_unity(4)?;
    println!("claiming order 3 at q = ζ_4: {}", x.chain_ncomplex(&q, Some(3)).is_err());

    // a triangle with a hollow square glued along an edge
    let glued = DeltaSet::from_simplices(&[vec![0, 1, 2], vec![1, 3], vec![3, 4], vec![4, 2]])?;
    let c = glued.chain_ncomplex(&root_of_unity(3)?, Some(3))?;
    println!("glued complex: {:?}", c.dims());

    let random = random_glued(&mut ChaCha8Rng::seed_from_u64(3), 4);
    let q = Scalar::from_int(&field(1), 2);
    println!("random glued complex {:?}; d_q at q = 2 on 1-cells:\n{:?}", random.counts(), random.dq_matrix(1, &q)?);
    Ok(())
}
