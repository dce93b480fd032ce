// Integral basis of harmonic cochains on `Gamma(t^2)` over `F_2` and the
// Petersson Gram matrix.

use drinfeld::arith::field::FiniteField;
use drinfeld::arith::fqpoly::FqPoly;
use drinfeld::cochains::{s_gamma, verify_harmonic};
use drinfeld::groups::GroupSpec;
use drinfeld::hecke::Level;
use drinfeld::Result;

pub fn run_example() -> Result<()> {
    let f = FiniteField::new(2)?;
    let spec = GroupSpec::gamma(FqPoly::parse(&f, "0,0,1")?)?;
    let level = Level::build(&spec, false)?;
    let g = level.genus();
    println!("{}: rank {g} on {} core edges", spec.describe(), level.lattice.num_edges());
    for i in 0..g {
        let row = level.lattice.basis.row(i);
        let ok = verify_harmonic(&level.graph, &level.lattice, &row);
        let vals: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("  phi_{i} = [{}] harmonic: {ok}", vals.join(" "));
    }
    let gram = level.gram.to_int().expect("unweighted Gram is integral");
    println!("Gram matrix:");
    for r in gram.to_i64_rows() {
        println!("  {r:?}");
    }
    println!("det = {}, S_Gamma = {:?}", level.gram.det(), s_gamma(&level.lattice, &level.gram)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
