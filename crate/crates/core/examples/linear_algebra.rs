//! Kernels, images and subquotients of matrices over Q(ζ_M).

use qhomalg::cyclo::field;
use qhomalg::linalg::{induced_map, subquotient, Matrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = field(3);
    // d: Q³ → Q³ with d² = 0
    let d = Matrix::from_int_rows(&f, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
    assert!(d.mul(&d).is_zero());
    let kernel = d.kernel_basis();
    let image = d.image_basis();
    println!("rank {}, kernel dim {}, image dim {}", d.rank(), kernel.dim(), image.dim());

    let h = subquotient(kernel, image)?;
    println!("Ker d / Im d has dimension {}", h.dim());

    // the scaling by 2 acts on the subquotient
    let two = Matrix::identity(&f, 3).scale(&qhomalg::cyclo::Scalar::from_int(&f, 2));
    println!("induced map: {:?}", induced_map(&two, &h, &h)?);

    let m = Matrix::from_int_rows(&f, &[&[2, 1], &[1, 1]]);
    println!("inverse: {:?}", m.inverse()?);
    Ok(())
}
