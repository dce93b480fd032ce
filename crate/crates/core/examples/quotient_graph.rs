// Quotient graphs `Gamma \ T` for a few congruence subgroups, with their
// cusps, edge stabilizers and genus.

use drinfeld::arith::field::FiniteField;
use drinfeld::arith::fqpoly::FqPoly;
use drinfeld::export::quotient_dot;
use drinfeld::groups::{Flavor, GroupSpec};
use drinfeld::quotient::QuotientGraph;
use drinfeld::Result;

pub fn run_example() -> Result<()> {
    let f = FiniteField::new(2)?;
    let cases = [("1,1,0,1", Flavor::Gamma0Only), ("0,0,1", Flavor::GammaN), ("0,1,1", Flavor::GammaN)];
    for (n, flavor) in cases {
        let spec = GroupSpec::new(&f, FqPoly::parse(&f, n)?, None, 0, flavor)?;
        let g = QuotientGraph::build(&spec)?;
        let cs = g.cycle_system()?;
        println!(
            "{}: index {}, {} vertices, {} edges, {} cusps, genus {} (euler {})",
            spec.describe(),
            spec.index_in_sl2(),
            g.vertices.len(),
            g.edges.len(),
            g.rays.len(),
            cs.genus(),
            g.euler_check()
        );
        let weights: Vec<u64> = g.edges.iter().filter(|e| e.core).map(|e| e.n_e).collect();
        println!("  core edge weights n(e): {weights:?}");
    }

    let spec = GroupSpec::gamma0(FqPoly::parse(&f, "0,1")?)?;
    print!("{}", quotient_dot(&QuotientGraph::build(&spec)?));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
