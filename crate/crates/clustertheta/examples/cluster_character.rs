//! Caldero–Chapoton characters of Kronecker preprojectives from quiver
//! Grassmannian point counts, next to the matching theta functions.

use clustertheta::brokenlines::theta_function;
use clustertheta::quiver::grass::{caldero_chapoton, counting_polynomial};
use clustertheta::quiver::rep::standard_indecomposable;
use clustertheta::quiver::Quiver;
use clustertheta::scattering::plane::Point;
use clustertheta::scattering::rank2_diagram;
use clustertheta::LatticeVec;

fn main() -> clustertheta::Result<()> {
    let q = Quiver::kronecker(2);
    let names: Vec<String> = ["A1", "A2", "X1", "X2"].map(String::from).to_vec();
    let rep = standard_indecomposable(&q, &LatticeVec(vec![5, 6]))?;
    let e = LatticeVec(vec![2, 4]);
    let p = counting_polynomial(&q, &rep, &e)?;
    println!("|Gr_(2,4)(5,6)(F_q)| = {p}, chi = {}", p.at_one());

    let d = rank2_diagram(2, 8)?;
    for dim in [[0, 1], [1, 2], [2, 3]] {
        let dim = LatticeVec(dim.to_vec());
        let rep = standard_indecomposable(&q, &dim)?;
        let cc = caldero_chapoton(&q, &rep, true)?;
        let m0 = q.g_map(&dim)?.scale(-1).concat(&LatticeVec(vec![0, 0]));
        let theta = theta_function(&m0, &Point::parse("3/2,1")?, &d, dim.total() as u32)?;
        println!("CC{dim} = {}", cc.to_string_with(&names));
        println!("  equals theta_{m0}: {}", cc == theta.value);
    }
    Ok(())
}
