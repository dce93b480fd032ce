// Level raising from `Gamma(t^2)` by `v = t^2 + t + 1` over `F_2`: the
// congruence module, candidate primes and their verification.

use drinfeld::arith::field::FiniteField;
use drinfeld::arith::fqpoly::FqPoly;
use drinfeld::congruence::{congruence_module, default_probes, level_raising_primes, verify_congruence, Raising};
use drinfeld::groups::GroupSpec;
use drinfeld::Result;

pub fn run_example() -> Result<()> {
    let f = FiniteField::new(2)?;
    let n = FqPoly::parse(&f, "0,0,1")?;
    let v = FqPoly::parse(&f, "1,1,1")?;
    let r = Raising::build(&GroupSpec::gamma(n.clone())?, &v)?;
    println!("genus {} -> {}, new rank {}", r.small.genus(), r.big.genus(), r.split.new.cols());

    let cm = congruence_module(&r)?;
    println!("det(beta' beta) = {}, product of resultants = {}", cm.det, cm.resultant_product);

    let rep = level_raising_primes(&r)?;
    println!("T_v char poly {}", rep.char_poly);
    for fac in &rep.factors {
        let labels: Vec<String> = fac.primes.iter().map(|p| format!("{} ({})", p.l, p.status)).collect();
        println!("  {} ^ {}: resultant {}; {}", fac.factor, fac.multiplicity, fac.resultant, labels.join(", "));
    }
    let probes = default_probes(&f, 2, &(&n * &v));
    for l in rep.candidates() {
        let ver = verify_congruence(&r, l, &probes)?;
        println!("l = {l}: verified {} over GF({l}^{})", ver.verified, ver.extension_degree);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
