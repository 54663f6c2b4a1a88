//! JSON forms of complexes, Δ-sets, forms and connections.

use qhomalg::complex::{ComplexRepr, NComplex};
use qhomalg::delta::builtin;
use qhomalg::gauge::random_connection;
use qhomalg::generate::{random_ncomplex, Profile};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = random_ncomplex(3, Profile::Small, 9)?.complex;
    let text = serde_json::to_string_pretty(&c.to_repr())?;
    println!("{text}");
    let back = NComplex::from_repr(&serde_json::from_str::<ComplexRepr>(&text)?)?;
    println!("round trip preserved the complex: {}", back == c);

    println!("{}", serde_json::to_string(&builtin("boundary2")?.to_repr())?);
    let a = random_connection(3, 2, 1, &mut ChaCha8Rng::seed_from_u64(1))?;
    println!("{}", serde_json::to_string(&a.to_repr())?);
    Ok(())
}
