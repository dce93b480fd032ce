// The three-level tower `Gamma(t^2) ⊃ Gamma(t^2) ∩ Gamma_0(v) ⊃ Gamma(t^2) ∩ Gamma_0(v^2)`
// for `v = t + 1`: exactness modulo primes and the `mu' mu` block matrix.

use drinfeld::arith::field::FiniteField;
use drinfeld::arith::fqpoly::FqPoly;
use drinfeld::tower::tower_check;
use drinfeld::Result;

pub fn run_example() -> Result<()> {
    let f = FiniteField::new(2)?;
    let rep = tower_check(&FqPoly::parse(&f, "0,0,1")?, &FqPoly::parse(&f, "1,1")?, 0, 30)?;
    println!("genera {:?}", rep.genera);
    println!("zeta readings composing to zero: {:?}", rep.zeta_readings_composing_to_zero);
    for e in &rep.exactness {
        println!("  l = {:2}: exact {}, three-copy injective {}", e.l, e.exact, e.three_copy_injective);
    }
    println!("skipped primes {:?}", rep.skipped);
    for c in &rep.comparisons {
        println!("  reading {:?} (transposed {}): equal {}", c.reading, c.transposed, c.equal);
    }
    println!("identified blocks:");
    for row in &rep.identified_blocks {
        println!("  {row:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
