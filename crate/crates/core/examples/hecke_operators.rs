// Hecke operators on `Gamma_0(t^3 + t + 1)` and `Gamma(t^2)`: matrices,
// characteristic polynomials, self-adjointness and the Ramanujan bound.

use drinfeld::arith::field::FiniteField;
use drinfeld::arith::fqpoly::FqPoly;
use drinfeld::congruence::default_probes;
use drinfeld::groups::GroupSpec;
use drinfeld::hecke::{char_poly_of, hecke_matrix, hecke_tau, is_self_adjoint, Level};
use drinfeld::Result;

pub fn run_example() -> Result<()> {
    let f = FiniteField::new(2)?;
    for spec in [
        GroupSpec::gamma0(FqPoly::parse(&f, "1,1,0,1")?)?,
        GroupSpec::gamma(FqPoly::parse(&f, "0,0,1")?)?,
    ] {
        let level = Level::build(&spec, false)?;
        println!("{} (genus {})", spec.describe(), level.genus());
        let probes = default_probes(&f, 2, spec.n());
        let mut mats = Vec::new();
        for p in &probes {
            let t = hecke_matrix(&level, p)?;
            let q_v = 2u64.pow(p.degree().unwrap_or(0) as u32);
            let cp = char_poly_of(&t.to_int()?)?;
            println!(
                "  T_{}: char poly {cp}, self-adjoint {}, ramanujan {}, equals double coset {}",
                p.to_text(),
                is_self_adjoint(&t.matrix, &level.gram),
                cp.roots_within_ramanujan_bound(q_v),
                hecke_tau(&level, p)?.matrix == t.matrix
            );
            mats.push(t.matrix);
        }
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                let c = &mats[i] * &mats[j] == &mats[j] * &mats[i];
                println!("  [T_{}, T_{}] = 0: {c}", probes[i].to_text(), probes[j].to_text());
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
