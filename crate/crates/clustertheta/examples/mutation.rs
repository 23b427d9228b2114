//! Mutate an A3 seed with principal coefficients and print cluster variables,
//! g-vectors and c-vectors after each step.

use clustertheta::cluster::{f_polynomial, Seed};
use clustertheta::quiver::Quiver;

fn main() -> clustertheta::Result<()> {
    let form = Quiver::a(3).skew_form();
    let names: Vec<String> = ["A1", "A2", "A3", "X1", "X2", "X3"]
        .map(String::from)
        .to_vec();
    let mut seed = Seed::initial(form);
    for k in [1, 2, 3, 1] {
        seed = seed.mutate(k)?;
        println!("after mutation at {k}:");
        let g = seed.g_vectors()?;
        for (i, v) in seed.variables().iter().enumerate() {
            println!("  x{} = {}", i + 1, v.to_string_with(&names));
            println!(
                "     F = {}  g = {}  c = {}",
                f_polynomial(v).to_string_with(&names),
                g[i],
                seed.c_vectors()[i]
            );
        }
    }
    Ok(())
}
