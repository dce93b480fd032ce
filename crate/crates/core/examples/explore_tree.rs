// Breadth-first exploration of `Gamma_0(t^3 + t + 1) \ T` straight from the
// tree, with equivalence tests between vertices, compared with the coset
// model of the quotient.

use drinfeld::arith::field::FiniteField;
use drinfeld::arith::fqpoly::FqPoly;
use drinfeld::explore::explore;
use drinfeld::groups::GroupSpec;
use drinfeld::quotient::QuotientGraph;
use drinfeld::Result;

pub fn run_example() -> Result<()> {
    let f = FiniteField::new(2)?;
    let spec = GroupSpec::gamma0(FqPoly::parse(&f, "1,1,0,1")?)?;
    let ex = explore(&spec, 16)?;
    let g = QuotientGraph::build(&spec)?;
    println!("explored {} vertices, {} edges; core {} / {}", ex.vertices.len(), ex.edges.len(), ex.core_vertices.len(), ex.core_edges.len());
    for v in ex.vertices.iter().filter(|v| v.expanded).take(8) {
        println!("  {} depth {} stabilizer {}", v.lift.text(), v.depth, v.stab_order);
    }
    println!("genus from exploration {}, from cosets {}", ex.genus(), g.cycle_system()?.genus());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
