//! Complete the rank-2 diagrams for b = 1, 2, 3 and check loop consistency.

use clustertheta::scattering::{loop_defect, rank2_diagram};

fn main() -> clustertheta::Result<()> {
    let names: Vec<String> = ["A1", "A2", "X1", "X2"].map(String::from).to_vec();
    for b in 1..=3 {
        let k = 6;
        let d = rank2_diagram(b, k)?;
        println!("b = {b}, order {k}: {} walls", d.walls.len());
        for w in d.walls.iter().filter(|w| !w.incoming) {
            println!(
                "  ray normal {}: {}",
                w.normal,
                w.func.poly().to_string_with(&names)
            );
        }
        let trivial = loop_defect(&d, i64::from(k))?.iter().all(|p| p.is_zero());
        println!("  loop acts trivially: {trivial}");
    }
    Ok(())
}
