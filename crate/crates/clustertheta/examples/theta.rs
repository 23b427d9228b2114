//! Theta functions in the b = 2 diagram by broken lines, compared with the
//! path-ordered product from the chamber of the initial exponent.

use clustertheta::brokenlines::{restrict_to_a, theta_function, theta_via_path};
use clustertheta::scattering::plane::Point;
use clustertheta::scattering::rank2_diagram;
use clustertheta::LatticeVec;

fn main() -> clustertheta::Result<()> {
    let d = rank2_diagram(2, 8)?;
    let q = Point::parse("3/2,1")?;
    let names: Vec<String> = ["A1", "A2", "X1", "X2"].map(String::from).to_vec();
    for m in [[1, -1, 0, 0], [2, -2, -1, -1], [2, -1, 0, 0]] {
        let m = LatticeVec(m.to_vec());
        let t = theta_function(&m, &q, &d, 8)?;
        println!("theta_{m} = {}", t.value.to_string_with(&names));
        println!(
            "  {} broken lines, X = 1: {}",
            t.lines.len(),
            restrict_to_a(&t.value).to_string_with(&names[..2])
        );
        for l in &t.lines {
            let steps: Vec<String> = l
                .segments
                .iter()
                .map(|s| format!("{}·z^{}", s.coeff, s.exponent))
                .collect();
            println!("    {}", steps.join(" -> "));
        }
        match theta_via_path(&m, &q, &d) {
            Ok(p) => println!("  path-ordered product agrees: {}", p == t.value),
            Err(e) => println!("  no path-ordered route: {e}"),
        }
    }
    Ok(())
}
