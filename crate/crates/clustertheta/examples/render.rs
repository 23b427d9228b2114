//! Write the b = 2 diagram with the broken lines of theta_(1,-1,0,0) as SVG
//! and TikZ into the current directory.

use clustertheta::brokenlines::theta_function;
use clustertheta::emit::{emit_svg, emit_tikz};
use clustertheta::scattering::plane::Point;
use clustertheta::scattering::rank2_diagram;
use clustertheta::{Error, LatticeVec};

fn main() -> clustertheta::Result<()> {
    let d = rank2_diagram(2, 6)?;
    let t = theta_function(
        &LatticeVec(vec![1, -1, 0, 0]),
        &Point::parse("3/2,1")?,
        &d,
        6,
    )?;
    let io = |e: std::io::Error| Error::Invalid(e.to_string());
    std::fs::write("broken_lines.svg", emit_svg(&d, &t.lines)?).map_err(io)?;
    std::fs::write("broken_lines.tex", emit_tikz(&d, &t.lines)?).map_err(io)?;
    println!(
        "wrote broken_lines.svg and broken_lines.tex ({} lines)",
        t.lines.len()
    );
    Ok(())
}
