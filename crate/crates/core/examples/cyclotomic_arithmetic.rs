//! Exact arithmetic in Q(ζ_M) and q-numbers at roots of unity.

use qhomalg::complex::root_of_unity;
use qhomalg::cyclo::{cyclotomic_polynomial, Scalar};
use qhomalg::qnum::{gaussian_row, q_binomial, q_factorial, q_int};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for m in [3, 4, 5, 8, 12] {
        let phi: Vec<String> = cyclotomic_polynomial(m).iter().map(ToString::to_string).collect();
        println!("Φ_{m} coefficients (low to high): {}", phi.join(" "));
    }

    let z = root_of_unity(5)?;
    let a = &Scalar::from_ratio(z.field(), 1, 2) + &z;
    let b = &z.pow(3)? - &Scalar::one(z.field());
    println!("a = {a}, b = {b}");
    println!("a·b = {}", &a * &b);
    println!("a / b = {}", a.checked_div(&b)?);
    println!("order of ζ_5: {:?}", z.multiplicative_order(20));

    for n in 2..=6u32 {
        let q = root_of_unity(n)?;
        println!(
            "N = {n}: [N]_q = {}, [N]_q! = {}, Gaussian row {:?}",
            q_int(n, &q),
            q_factorial(n, &q),
            gaussian_row(n, &q).iter().map(ToString::to_string).collect::<Vec<_>>()
        );
    }

    let q = Scalar::from_int(&qhomalg::cyclo::field(1), 2);
    println!("[5 2]_2 = {}", q_binomial(5, 2, &q));
    Ok(())
}
