//! Connections ∇ = d + A on trivial bundles, their N-th power and the
//! identities it does and does not satisfy.

use qhomalg::complex::root_of_unity;
use qhomalg::forms::QForm;
use qhomalg::gauge::{
    chern_form, cs_density, divergence_defect, polynomial_inverse, random_connection, random_unipotent, DivergenceConstant, MatrixForm,
    QConnection,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);

    // at N = 2 (q = -1) everything is classical
    let classical = random_connection(2, 3, 2, &mut rng)?;
    let f = classical.curvature()?;
    println!("N = 2: curvature is order zero; Bianchi defect zero: {}", classical.bianchi_defect(&f).is_zero());
    let (trace, d_trace) = chern_form(&f, 1, classical.q());
    println!("  tr F = {trace}\n  closed: {}", d_trace.is_zero());
    let g = random_unipotent(classical.q().field(), 3, 2, &mut rng);
    let moved = classical.gauge_transform(&g)?.curvature()?;
    let q2 = classical.q();
    let conjugated = polynomial_inverse(&g, q2)?.mul(&f, q2).mul(&g, q2);
    println!("  F of the gauge transform equals g⁻¹ F g: {}", moved == conjugated);

    // at N = 3 the third power keeps a first-order part in general
    let a = random_connection(3, 4, 2, &mut rng)?;
    match a.curvature() {
        Ok(_) => println!("N = 3: this connection has order-zero ∇³"),
        Err(e) => println!("N = 3: {e}"),
    }

    // a flat rank-one example
    let q = root_of_unity(3)?;
    let fld = q.field();
    let flat = QConnection::new(MatrixForm::from_fn(1, |_, _| QForm::x(fld, 2, 1).mul(&QForm::xi(fld, 2, 0), &q)), 3)?;
    println!("A = x₂ξ₁ is flat: {}", flat.frame_curvature().is_zero());

    let b = random_connection(3, 3, 2, &mut rng)?;
    println!("Chern–Simons density: {}", cs_density(b.a(), &q)?);
    // A = x₁x₂ξ₃ has ∂₁∂₂A₃ = 1, so tr d²A is nonzero
    let a3 = QForm::x(fld, 3, 0).mul(&QForm::x(fld, 3, 1), &q).mul(&QForm::xi(fld, 3, 2), &q);
    let c = MatrixForm::from_fn(1, |_, _| a3.clone());
    println!("tr d²A = {}", c.d(&q).d(&q).trace());
    for constant in [DivergenceConstant::Literal, DivergenceConstant::Corrected] {
        println!("divergence identity with {constant:?} constant holds: {}", divergence_defect(&c, &q, constant)?.is_zero());
    }
    Ok(())
}
