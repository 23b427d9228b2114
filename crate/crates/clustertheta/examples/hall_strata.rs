//! Bending strata of the broken lines for the Kronecker module (5,6): each
//! line carries a q-polynomial, and the two lines ending at e = (2,4) add up
//! to the point count of the quiver Grassmannian.

use clustertheta::hall::{hall_theta_chi, hn_phases};
use clustertheta::quiver::grass::counting_polynomial;
use clustertheta::quiver::rep::standard_indecomposable;
use clustertheta::quiver::Quiver;
use clustertheta::scattering::plane::Point;
use clustertheta::LatticeVec;

fn main() -> clustertheta::Result<()> {
    let q = Quiver::kronecker(2);
    let d = LatticeVec(vec![5, 6]);
    let e = LatticeVec(vec![2, 4]);
    let h = hall_theta_chi(&q, &d, &Point::from_ints(2, 1))?;
    let target = LatticeVec(vec![-1, -2, 2, 4]);
    for l in h.lines.iter().filter(|l| l.line.last().exponent == target) {
        let Some(s) = &l.strata else { continue };
        println!("filtration {}", s.filtration);
        println!(
            "  strata polynomial {} (q = 1: {})",
            s.qpoly,
            s.qpoly.at_one()
        );
        let hn = hn_phases(&s.filtration, &l.line.endpoint, &q, &d, &e)?;
        let zs: Vec<String> = hn
            .values
            .iter()
            .map(|(c, z)| format!("Z{c} = {z}"))
            .collect();
        println!("  {}  decreasing: {}", zs.join(", "), hn.decreasing);
    }
    let rep = standard_indecomposable(&q, &d)?;
    println!("sum of strata   {}", h.refined[&target]);
    println!("finite-field    {}", counting_polynomial(&q, &rep, &e)?);
    Ok(())
}
