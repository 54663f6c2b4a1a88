//! Quadratic relations of quantum matrices: derived from covariance of the
//! form algebra, checked against the comultiplication and the coaction.

use qhomalg::complex::root_of_unity;
use qhomalg::linalg::Subspace;
use qhomalg::quantum::{
    coaction_failure, coaction_relation_vectors, comultiplication_failure, differential_generator_failure, listed_relation_vectors,
    relations_from_covariance, CoactionSide,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = root_of_unity(3)?;
    for n in [2, 3] {
        let derived = relations_from_covariance(n, &q);
        let listed = Subspace::span(q.field(), n.pow(4), &listed_relation_vectors(n, &q));
        println!("n = {n}: covariance relations span {} dimensions, the listed ones {}", derived.dim(), listed.dim());
        println!("  same span: {}", derived.same_span(&listed)?);

        let vectors = coaction_relation_vectors(n, &q, CoactionSide::Columns);
        println!("  comultiplication preserves the covariance ideal: {}", comultiplication_failure(n, &vectors, q.field())?.is_none());
        println!(
            "  comultiplication preserves the listed ideal: {}",
            comultiplication_failure(n, &listed_relation_vectors(n, &q), q.field())?.is_none()
        );
        println!("  coaction by columns is compatible: {}", coaction_failure(n, &q, &derived, CoactionSide::Columns).is_none());
        println!("  coaction by rows is compatible: {}", coaction_failure(n, &q, &derived, CoactionSide::RowsOnForms).is_none());
        println!("  coaction commutes with d on generators: {}", differential_generator_failure(n, CoactionSide::Columns).is_none());
    }
    Ok(())
}
