//! Invariant suite run by `drinfeld selftest` on small levels.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::field::FiniteField;
use crate::arith::fqpoly::FqPoly;
use crate::arith::matrix::RatMatrix;
use crate::cochains::{harmonic_kernel, s_gamma, verify_harmonic};
use crate::congruence::{congruence_module, ihara_check, Raising};
use crate::error::Result;
use crate::explore::explore;
use crate::groups::{Flavor, GroupSpec};
use crate::hecke::{char_poly_of, hecke_matrix, is_self_adjoint, Level};
use crate::session::SessionConfig;
use crate::tower::tower_check;
use crate::tree::{ball_size, canonicalize_vertex, canonicalize_with_retry, PolyMat2, TreeVertex};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

struct Suite(Vec<Check>);

impl Suite {
    fn add(&mut self, name: &str, passed: bool, detail: String) {
        self.0.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn spec(q: u64, n: &str, flavor: Flavor) -> Result<GroupSpec> {
    let f = FiniteField::new(q)?;
    GroupSpec::new(&f, FqPoly::parse(&f, n)?, None, 0, flavor)
}

pub fn run_selftest(cfg: &SessionConfig) -> Result<(SelftestReport, bool)> {
    let mut s = Suite(Vec::new());

    for q in [2u64, 3] {
        let f = FiniteField::new(q)?;
        let got = ball_size(&f, 4);
        let want = 1 + (q + 1) * (q.pow(4) - 1) / (q - 1);
        s.add(&format!("tree ball q={q}"), got as u64 == want, format!("{got} vs {want}"));
    }

    // Laurent canonicalization at the session precision
    {
        let f = FiniteField::new(3)?;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut ok = true;
        for _ in 0..20 {
            let mut g = PolyMat2::identity(&f);
            for _ in 0..4 {
                let c: Vec<u64> = (0..3).map(|_| rng.gen_range(0..3)).collect();
                let x = FqPoly::from_codes(&f, &c)?;
                let e = if rng.gen_bool(0.5) { PolyMat2::upper(x) } else { PolyMat2::lower(x) };
                g = g.mul(&e);
            }
            let m = g.to_ratmat().mul(&TreeVertex::origin(&f).matrix());
            let exact = canonicalize_vertex(&m)?;
            let (v, _) = canonicalize_with_retry(&m, cfg.precision, 1 << 12)?;
            ok &= v == exact;
        }
        s.add("laurent canonicalization", ok, format!("precision {}", cfg.precision));
    }

    let levels = [
        (2, "1,1,0,1", Flavor::Gamma0Only),
        (2, "0,0,1", Flavor::GammaN),
        (2, "0,1,1", Flavor::GammaN),
        (3, "1,0,1", Flavor::Gamma0Only),
    ];
    for (q, n, fl) in levels {
        let sp = spec(q, n, fl)?;
        let level = Level::build(&sp, true)?;
        let g = level.genus();
        let kernel = harmonic_kernel(&level.graph).cols();
        let euler = level.graph.euler_check();
        let name = sp.describe();
        s.add(
            &format!("rank three ways {name}"),
            kernel == g && euler == g as i64,
            format!("kernel {kernel}, cycles {g}, euler {euler}"),
        );
        let harmonic = (0..g).all(|i| verify_harmonic(&level.graph, &level.lattice, &level.lattice.basis.row(i)));
        s.add(&format!("basis harmonic {name}"), harmonic, String::new());
        let gr = &level.gram;
        s.add(
            &format!("gram {name}"),
            gr.is_symmetric() && gr.is_positive_definite(),
            format!("det {}", gr.det()),
        );
        let degrees = level.graph.degree_sums();
        s.add(
            &format!("degree balance {name}"),
            degrees.iter().all(|&d| d == q + 1),
            String::new(),
        );
    }
    {
        let f = FiniteField::new(2)?;
        let full = Level::build(&GroupSpec::full(&f), true)?;
        s.add("full group rank", full.genus() == 0, String::new());
    }

    // independent walk of the tree
    {
        let sp = spec(2, "1,1,0,1", Flavor::Gamma0Only)?;
        let ex = explore(&sp, cfg.depth_cap)?;
        let level = Level::build(&sp, true)?;
        s.add(
            "exploration genus Gamma0(1,1,0,1)",
            ex.genus() == level.genus() as i64,
            format!("{} vs {}", ex.genus(), level.genus()),
        );
    }

    // Hecke operators on Gamma(t^2)
    {
        let sp = spec(2, "0,0,1", Flavor::GammaN)?;
        let level = Level::build(&sp, false)?;
        let f = sp.field().clone();
        let probes = [FqPoly::parse(&f, "1,1")?, FqPoly::parse(&f, "1,1,1")?];
        let mut mats: Vec<RatMatrix> = Vec::new();
        for (w, q_v) in probes.iter().zip([2u64, 4]) {
            let t = hecke_matrix(&level, w)?;
            let cp = char_poly_of(&t.to_int()?)?;
            s.add(
                &format!("hecke {}", w.to_text()),
                is_self_adjoint(&t.matrix, &level.gram) && cp.roots_within_ramanujan_bound(q_v),
                cp.to_string(),
            );
            mats.push(t.matrix);
        }
        s.add("hecke commute", &mats[0] * &mats[1] == &mats[1] * &mats[0], String::new());
    }

    // raising Gamma(t^2) by t^2 + t + 1
    {
        let sp = spec(2, "0,0,1", Flavor::GammaN)?;
        let v = FqPoly::parse(sp.field(), "1,1,1")?;
        let r = Raising::build(&sp, &v)?;
        let g = r.small.genus();
        let iv = &r.maps.i_plain.matrix * &r.maps.v_plain.matrix;
        let scalar = RatMatrix::identity(g).scale(&BigRational::from_integer((r.q_v + 1).into()));
        s.add("I V = q_v + 1", iv == scalar, String::new());
        let ih = ihara_check(&r)?;
        s.add(
            "ihara",
            ih.violations.is_empty() && ih.rationally_injective && ih.mod_l_consistent,
            format!("snf torsion {:?}", ih.torsion_primes),
        );
        let cm = congruence_module(&r)?;
        s.add(
            "congruence module",
            cm.matches_block_model && cm.w_matches_model && cm.identity_holds && cm.det_matches,
            format!("det {}", cm.det),
        );
        let sg = s_gamma(&r.small.lattice, &r.small.gram)?;
        s.add("S_Gamma(t^2)", sg.len() == 2, format!("{sg:?}"));
    }

    // tower over Gamma(t^2) with v = t + 1
    {
        let f = FiniteField::new(2)?;
        let rep = tower_check(&FqPoly::parse(&f, "0,0,1")?, &FqPoly::parse(&f, "1,1")?, 0, 30)?;
        let exact = rep
            .exactness
            .iter()
            .all(|e| e.exact && e.three_copy_injective);
        s.add("tower exactness", exact && !rep.exactness.is_empty(), format!("{} primes", rep.exactness.len()));
    }

    let failed = s.0.iter().filter(|c| !c.passed).count();
    let report = SelftestReport {
        passed: s.0.len() - failed,
        failed,
        checks: s.0,
    };
    Ok((report, failed == 0))
}
