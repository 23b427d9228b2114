//! AR data for the Kronecker quiver: τ, Hom/Ext, and the preprojective
//! component as Graphviz.

use clustertheta::emit::emit_dot;
use clustertheta::quiver::{Component, Quiver, Translate};
use clustertheta::LatticeVec;

fn main() -> clustertheta::Result<()> {
    let q = Quiver::kronecker(2);
    let d = LatticeVec(vec![2, 3]);
    println!("tau{d} = {}", q.coxeter_translate(&d, Translate::Tau)?);
    println!(
        "tau^-1{d} = {}",
        q.coxeter_translate(&d, Translate::TauInverse)?
    );
    if let Err(e) = q.coxeter_translate(&q.projective(0), Translate::Tau) {
        println!("tau of P1: {e}");
    }
    for other in [[0, 1], [1, 2], [3, 4], [1, 1]] {
        let o = LatticeVec(other.to_vec());
        let (hom, ext) = q.hom_ext_dims(&d, &o)?;
        println!("hom({d}, {o}) = {hom}, ext = {ext}");
    }
    println!("{}", emit_dot(&q.ar_component(Component::P, 3)?));
    Ok(())
}
