// Walk the Bruhat-Tits tree of `F_q((1/t))`: neighbors, distances and the
// size of balls around the origin vertex.

use drinfeld::arith::field::FiniteField;
use drinfeld::arith::fqpoly::FqPoly;
use drinfeld::tree::{ball_size, canonicalize_vertex, PolyMat2, TreeVertex};
use drinfeld::Result;

pub fn run_example() -> Result<()> {
    for q in [2u64, 3] {
        let f = FiniteField::new(q)?;
        let o = TreeVertex::origin(&f);
        println!("q = {q}: origin {} has {} neighbors", o.text(), o.neighbors().len());
        for d in 0..=4 {
            println!("  ball of radius {d}: {} vertices", ball_size(&f, d));
        }
    }

    // the vertex g * Lambda_0 for g = [[1, t], [0, 1]] [[1, 0], [t^2, 1]]
    let f = FiniteField::new(2)?;
    let t = FqPoly::t(&f);
    let g = PolyMat2::upper(t.clone()).mul(&PolyMat2::lower(&t * &t));
    let m = g.to_ratmat().mul(&TreeVertex::origin(&f).matrix());
    let v = canonicalize_vertex(&m)?;
    println!("g Lambda_0 = {} at distance {} from the origin", v.text(), v.distance(&TreeVertex::origin(&f)));
    let path: Vec<String> = TreeVertex::origin(&f).geodesic(&v).iter().map(|x| x.text()).collect();
    println!("geodesic: {}", path.join(" -> "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
