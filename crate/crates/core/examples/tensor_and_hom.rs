//! q-tensor products and q-Hom of N-complexes, chain morphisms and
//! null-homotopies.

use qhomalg::complex::{elementary_chain, root_of_unity};
use qhomalg::generate::{random_ncomplex, Profile};
use qhomalg::homops::{induced_on_homology, q_hom, q_tensor, GradedMap, HomConvention};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = root_of_unity(3)?;
    let v = random_ncomplex(3, Profile::Small, 1)?.complex;
    let w = random_ncomplex(3, Profile::Small, 2)?.complex;

    let t = q_tensor(&v, &w, &q)?;
    println!("V ⊗_q W: dimensions {:?}, 3-complex: {}", t.complex.dims(), t.complex.check_nilpotent().is_ok());

    let weighted = q_hom(&v, &w, &q, HomConvention::DegreeWeighted)?;
    println!("Hom_q(V, W): dimensions {:?}, 3-complex: {}", weighted.complex.dims(), weighted.complex.check_nilpotent().is_ok());
    let positional = q_hom(&v, &w, &q, HomConvention::PositionWeighted)?;
    println!("with position weights instead: 3-complex: {}", positional.complex.check_nilpotent().is_ok());

    let morphisms = weighted.chain_morphisms()?;
    let null = morphisms.iter().filter(|f| matches!(weighted.null_homotopy_certificate(f), Ok(Some(_)))).count();
    println!("{} chain morphisms in the basis, {null} null-homotopic", morphisms.len());

    // a chain of full length N is contractible: its identity is null-homotopic
    let c = elementary_chain(q.field(), 3, 2, 3, 1)?;
    let end = q_hom(&c, &c, &q, HomConvention::DegreeWeighted)?;
    let id = GradedMap::identity(&c);
    println!("identity of a full chain has a certificate: {}", end.null_homotopy_certificate(&id)?.is_some());
    let on_homology = induced_on_homology(&id, &c, &c)?;
    println!("nonzero homology cells of the full chain: {}", on_homology.values().filter(|m| m.rows() > 0).count());
    Ok(())
}
