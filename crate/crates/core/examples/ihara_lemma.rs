// Degeneracy maps from `Gamma(t^2)` to `Gamma(t^2) ∩ Gamma_0(t + 1)` and the
// Ihara injectivity check modulo small primes.

use drinfeld::arith::field::FiniteField;
use drinfeld::arith::fqpoly::FqPoly;
use drinfeld::congruence::{ihara_check, Raising};
use drinfeld::groups::GroupSpec;
use drinfeld::Result;

pub fn run_example() -> Result<()> {
    let f = FiniteField::new(2)?;
    let spec = GroupSpec::gamma(FqPoly::parse(&f, "0,0,1")?)?;
    let r = Raising::build(&spec, &FqPoly::parse(&f, "1,1")?)?;
    let iv = &r.maps.i_plain.matrix * &r.maps.v_plain.matrix;
    println!("I V = {} * id: {}", r.q_v + 1, iv == drinfeld::hecke::scalar(r.small.genus(), r.q_v as i64 + 1));

    let rep = ihara_check(&r)?;
    println!("g(n) = {}, g(vn) = {}", rep.g_n, rep.g_vn);
    println!("SNF diagonal of (V | V'): {:?}", rep.snf_diagonal.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    println!("rationally injective: {}", rep.rationally_injective);
    println!("torsion primes {:?}, allowed {:?} and {:?}", rep.torsion_primes, rep.excluded_primes, rep.s_gamma_n);
    for m in &rep.mod_l_ranks {
        println!("  rank mod {}: {}", m.l, m.rank);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
