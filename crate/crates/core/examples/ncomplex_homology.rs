//! Homology of an N-complex, its total homology and the Poincaré polynomial.

use qhomalg::generate::{random_exact, random_ncomplex, Profile};
use qhomalg::homology::{homology, is_n_exact, total_homology};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = random_ncomplex(3, Profile::Small, 11)?;
    let c = &g.complex;
    println!("dimensions {:?}", c.dims());
    let (lo, hi) = c.support().expect("nonempty");
    for p in 1..c.order() {
        let row: Vec<usize> = (lo..=hi).map(|i| homology(c, p, i).map(|h| h.dim())).collect::<Result<_, _>>()?;
        println!("_{p}H_i for i = {lo}..{hi}: {row:?}");
    }

    let total = total_homology(c)?;
    println!("total homology by degree: {:?}", total.dims_descending());
    println!("is a 2-complex: {}", total.complex.check_nilpotent().is_ok());
    println!("is an exact sequence: {}", total.is_exact_sequence()?);

    let exact = random_exact(4, Profile::Small, 5)?;
    println!("N-exact: {}, P(ζ_4) = {}", is_n_exact(&exact.complex)?, exact.complex.poincare_at_root()?);
    println!("P(ζ_3) of the first complex = {}", c.poincare_at_root()?);
    Ok(())
}
