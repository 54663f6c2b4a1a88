//! Polynomial q-differential forms: products, the differential, d^N = 0 and
//! the cohomology of total-degree slices.

use qhomalg::complex::root_of_unity;
use qhomalg::cyclo::Scalar;
use qhomalg::forms::{leibniz_defect, truncate_to_ncomplex, vanishing_table, QForm};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = root_of_unity(3)?;
    let f = q.field();
    let (x1, x2) = (QForm::x(f, 3, 0), QForm::x(f, 3, 1));
    let (xi1, xi2) = (QForm::xi(f, 3, 0), QForm::xi(f, 3, 1));

    println!("ξ₂ξ₁ = {}", xi2.mul(&xi1, &q));
    let w = x1.mul(&x2, &q).mul(&x2, &q);
    println!("ω = {w}");
    for k in 1..=3 {
        println!("d^{k} ω = {}", w.d_power(k, &q));
    }

    // the q-Leibniz rule fails on ξ₂ · x₁ because q² ≠ 1
    println!("Leibniz defect of (ξ₂, x₁): {}", leibniz_defect(&xi2, &x1, &q));

    // the face operators reassemble d after a rescaling of monomials
    let u = x2.mul(&xi1, &q);
    println!("Σ q^ν ∂_ν (x₂ξ₁) = {}, d(x₂ξ₁) = {}", u.face_sum(&q), u.exterior_d(&q));

    let slice = truncate_to_ncomplex(3, &q, 3, 2, true)?;
    println!("total degree 2 slice: dimensions {:?}", slice.complex.dims());
    for cell in vanishing_table(3, &q, 3, 2)?.iter().filter(|c| c.dim > 0) {
        println!("  total {} p {} k {}: dim {}", cell.total_degree, cell.p, cell.form_degree, cell.dim);
    }
    let c = Scalar::from_int(f, 5);
    println!("d of a constant: {}", QForm::constant(&c, 3).exterior_d(&q));
    Ok(())
}
