//! Acceptance suite: one PASS/FAIL line per criterion, all checks exact.

use std::collections::{HashSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use drinfeld::arith::field::FiniteField;
use drinfeld::arith::fqpoly::FqPoly;
use drinfeld::cochains::{harmonic_kernel, s_gamma};
use drinfeld::congruence::{
    congruence_module, default_probes, ihara_check, level_raising_primes, verify_congruence, Raising,
};
use drinfeld::groups::{Flavor, GroupSpec};
use drinfeld::hecke::{char_poly_of, hecke_matrix, hecke_via_degeneracy, is_self_adjoint, raised_spec, scalar, Level};
use drinfeld::session::{golden_cases, golden_dir, run, Artifact};
use drinfeld::tower::tower_check;
use drinfeld::tree::{PolyMat2, TreeVertex};

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(q: u64) -> FiniteField {
    FiniteField::new(q).unwrap()
}

fn poly(f: &FiniteField, s: &str) -> FqPoly {
    FqPoly::parse(f, s).unwrap()
}

fn spec(q: u64, n: &str, flavor: Flavor) -> GroupSpec {
    let f = field(q);
    GroupSpec::new(&f, poly(&f, n), None, 0, flavor).unwrap()
}

/// Levels with stored golden outputs.
fn golden_levels() -> Vec<GroupSpec> {
    vec![
        spec(2, "1,1,0,1", Flavor::Gamma0Only),
        spec(2, "0,0,1", Flavor::GammaN),
        spec(2, "0,1,1", Flavor::GammaN),
        spec(3, "1,0,1", Flavor::Gamma0Only),
    ]
}

/// `(Gamma, v)` pairs used for the degeneracy, Ihara and congruence checks.
fn golden_pairs() -> Vec<(GroupSpec, FqPoly)> {
    let f = field(2);
    vec![
        (spec(2, "0,0,1", Flavor::GammaN), poly(&f, "1,1")),
        (spec(2, "0,0,1", Flavor::GammaN), poly(&f, "1,1,1")),
        (spec(2, "0,1", Flavor::GammaN), poly(&f, "1,1,0,1")),
        (spec(2, "1,1,0,1", Flavor::Gamma0Only), poly(&f, "1,1")),
    ]
}

fn bfs_count(f: &FiniteField, depth: u64) -> Result<(usize, usize), String> {
    let o = TreeVertex::origin(f);
    let mut seen = HashSet::from([o.clone()]);
    let mut queue = VecDeque::from([(o, 0u64)]);
    let mut checked = 0;
    while let Some((v, d)) = queue.pop_front() {
        let nb = v.neighbors();
        let distinct: HashSet<_> = nb.iter().cloned().collect();
        ensure(distinct.len() as u64 == f.order() + 1, || format!("{} has {} neighbors", v.text(), distinct.len()))?;
        checked += 1;
        if d == depth {
            continue;
        }
        for u in nb {
            if seen.insert(u.clone()) {
                queue.push_back((u, d + 1));
            }
        }
    }
    Ok((seen.len(), checked))
}

fn tree_regularity() -> Check {
    let mut notes = Vec::new();
    for q in [2u64, 3] {
        let f = field(q);
        let (count, checked) = bfs_count(&f, 6)?;
        let want = 1 + (q + 1) * (q.pow(6) - 1) / (q - 1);
        ensure(count as u64 == want, || format!("q={q}: {count} vertices, expected {want}"))?;
        // far-away vertices g * Lambda_0
        let t = FqPoly::t(&f);
        let mut g = PolyMat2::identity(&f);
        for k in 1..6u32 {
            g = g.mul(&PolyMat2::upper(t.pow(k))).mul(&PolyMat2::lower(&t + &FqPoly::one(&f)));
            let v = TreeVertex::origin(&f).act(&g);
            let nb: HashSet<_> = v.neighbors().into_iter().collect();
            ensure(nb.len() as u64 == q + 1, || format!("{} is not regular", v.text()))?;
        }
        notes.push(format!("q={q}: {count} vertices at radius 6, {checked} checked"));
    }
    Ok(notes.join("; "))
}

fn rank_two_ways() -> Check {
    let mut notes = Vec::new();
    for s in golden_levels() {
        let level = Level::build(&s, true).unwrap();
        let kernel = harmonic_kernel(&level.graph).cols();
        let cycles = level.cycles.genus();
        let euler = level.graph.euler_check();
        ensure(kernel == cycles && euler == cycles as i64 && level.genus() == cycles, || {
            format!("{}: kernel {kernel}, cycles {cycles}, euler {euler}", s.describe())
        })?;
        notes.push(format!("{} rank {cycles}", s.describe()));
    }
    for q in [2, 3] {
        let full = Level::build(&GroupSpec::full(&field(q)), true).unwrap();
        ensure(full.genus() == 0 && harmonic_kernel(&full.graph).cols() == 0, || format!("full group q={q} has rank {}", full.genus()))?;
    }
    notes.push("full group rank 0".into());
    Ok(notes.join("; "))
}

fn trial_division_primes(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            out.push(p.clone());
            while (&n % &p).is_zero() {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > BigInt::from(1) {
        out.push(n);
    }
    out
}

fn gram_properties() -> Check {
    let mut notes = Vec::new();
    for s in golden_levels() {
        for weighted in [true, false] {
            let level = Level::build(&s, weighted).unwrap();
            let gr = &level.gram;
            ensure(gr.is_symmetric() && gr.is_positive_definite(), || format!("{} Gram not symmetric positive definite", s.describe()))?;
            for (i, c) in level.cycles.cycles.iter().enumerate() {
                if c.steps.iter().all(|&(e, _)| level.graph.edges[e].n_e == 1) {
                    let d = gr.entries.get(i, i).clone();
                    ensure(d == BigInt::from(c.steps.len()).into(), || format!("{} diagonal {i}: {d} vs length {}", s.describe(), c.steps.len()))?;
                }
            }
            if let Some(g) = gr.to_int() {
                let det = g.det().unwrap();
                let sg = s_gamma(&level.lattice, gr).unwrap();
                ensure(sg == trial_division_primes(&det), || format!("{} S_Gamma {sg:?} vs det {det}", s.describe()))?;
                if !weighted {
                    notes.push(format!("{} det {det} S_Gamma {sg:?}", s.describe()));
                }
            }
        }
    }
    Ok(notes.join("; "))
}

fn hecke_suite() -> Check {
    let mut notes = Vec::new();
    let levels = [spec(2, "0,0,1", Flavor::GammaN), spec(2, "1,1,0,1", Flavor::Gamma0Only), spec(3, "1,0,1", Flavor::Gamma0Only)];
    for s in levels {
        let level = Level::build(&s, true).unwrap();
        let probes = default_probes(s.field(), 2, s.n());
        let mut mats = Vec::new();
        for p in &probes {
            let q_v = s.field().order().pow(p.degree().unwrap() as u32);
            let t = hecke_matrix(&level, p).unwrap();
            let name = format!("{} T_{}", s.describe(), p.to_text());
            ensure(is_self_adjoint(&t.matrix, &level.gram), || format!("{name} not self-adjoint"))?;
            let big = Level::build(&raised_spec(&s, p).unwrap().0, true).unwrap();
            ensure(hecke_via_degeneracy(&level, &big).unwrap() == t.matrix, || format!("{name}: construction paths differ"))?;
            let cp = char_poly_of(&t.to_int().unwrap()).unwrap();
            ensure(cp.roots_within_ramanujan_bound(q_v), || format!("{name}: {cp} violates |x| <= 2 sqrt({q_v})"))?;
            mats.push(t.matrix);
        }
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                ensure(&mats[i] * &mats[j] == &mats[j] * &mats[i], || {
                    format!("{}: T_{} and T_{} do not commute", s.describe(), probes[i].to_text(), probes[j].to_text())
                })?;
            }
        }
        notes.push(format!("{} {} probes", s.describe(), probes.len()));
    }
    Ok(notes.join("; "))
}

fn degeneracy_identity(raisings: &[Raising]) -> Check {
    for r in raisings {
        let iv = &r.maps.i_plain.matrix * &r.maps.v_plain.matrix;
        ensure(iv == scalar(r.small.genus(), r.q_v as i64 + 1), || format!("{} v={}", r.small.spec().describe(), r.v.to_text()))?;
    }
    Ok(format!("{} pairs", raisings.len()))
}

fn ihara(raisings: &[Raising]) -> Check {
    let mut notes = Vec::new();
    for r in raisings {
        let rep = ihara_check(r).unwrap();
        let allowed: Vec<BigInt> = rep.excluded_primes.iter().chain(&rep.s_gamma_n).cloned().collect();
        let bad: Vec<_> = rep.torsion_primes.iter().filter(|p| !allowed.contains(p)).collect();
        ensure(bad.is_empty(), || format!("{} v={}: torsion primes {bad:?}", rep.level, rep.v))?;
        ensure(rep.rank == 2 * rep.g_n, || format!("{} v={}: rank {} vs 2g {}", rep.level, rep.v, rep.rank, 2 * rep.g_n))?;
        notes.push(format!("g={} rank {} torsion {:?}", rep.g_n, rep.rank, rep.torsion_primes));
    }
    Ok(notes.join("; "))
}

fn congruence_identities(raisings: &[Raising]) -> Check {
    let mut notes = Vec::new();
    for r in raisings {
        let cm = congruence_module(r).unwrap();
        let name = format!("{} v={}", r.small.spec().describe(), r.v.to_text());
        ensure(cm.identity_holds, || format!("{name}: W_v^2 - 1 identity fails"))?;
        ensure(cm.det.abs() == cm.resultant_product.abs(), || format!("{name}: det {} vs {}", cm.det, cm.resultant_product))?;
        notes.push(format!("det {}", cm.det));
    }
    Ok(notes.join("; "))
}

fn level_raising() -> Check {
    let f = field(2);
    let n = poly(&f, "0,0,1");
    let v = poly(&f, "1,1,1");
    let r = Raising::build(&GroupSpec::gamma(n.clone()).unwrap(), &v).unwrap();
    ensure(r.small.genus() >= 1 && r.split.new.cols() >= 1, || "degenerate level".into())?;
    let rep = level_raising_primes(&r).unwrap();
    let candidates = rep.candidates();
    ensure(!candidates.is_empty(), || "no theorem-covered candidate".into())?;
    let probes = default_probes(&f, 2, &(&n * &v));
    for &l in &candidates {
        let ver = verify_congruence(&r, l, &probes).unwrap();
        ensure(ver.verified, || format!("l={l} not confirmed"))?;
    }
    Ok(format!("Gamma(t^2), v = t^2+t+1: candidates {candidates:?} confirmed with {} probes", probes.len()))
}

fn tower() -> Check {
    let f = field(2);
    let rep = tower_check(&poly(&f, "0,0,1"), &poly(&f, "1,1"), 0, 30).unwrap();
    ensure(!rep.exactness.is_empty(), || "no prime tested".into())?;
    for e in &rep.exactness {
        ensure(e.exact && e.three_copy_injective, || format!("l={}: exact {} injective {}", e.l, e.exact, e.three_copy_injective))?;
    }
    ensure(rep.comparisons.len() >= 2, || "printed readings not compared".into())?;
    let ls: Vec<u64> = rep.exactness.iter().map(|e| e.l).collect();
    let verdict: Vec<String> = rep.comparisons.iter().map(|c| format!("{:?}{}={}", c.reading, if c.transposed { "^T" } else { "" }, c.equal)).collect();
    Ok(format!("l in {ls:?}; printed matrix readings: {}", verdict.join(", ")))
}

fn pipeline() -> Vec<(String, Vec<Artifact>)> {
    golden_cases()
        .into_iter()
        .map(|c| (c.name.clone(), run(c.command, &c.config).unwrap().artifacts))
        .collect()
}

fn determinism() -> Check {
    let a = pipeline();
    let b = pipeline();
    let root = golden_dir();
    let mut files = 0;
    for ((name, xs), (_, ys)) in a.iter().zip(&b) {
        for (x, y) in xs.iter().zip(ys) {
            ensure(x.contents == y.contents, || format!("{name}/{} differs between runs", x.name))?;
            let stored = std::fs::read(root.join(name).join(&x.name)).map_err(|e| format!("{name}/{}: {e}", x.name))?;
            ensure(stored == x.contents.as_bytes(), || format!("{name}/{} differs from the stored file", x.name))?;
            files += 1;
        }
    }
    Ok(format!("{files} files identical across two runs and the stored copies"))
}

fn main() {
    let start = Instant::now();
    let raisings: Vec<Raising> = golden_pairs().iter().map(|(s, v)| Raising::build(s, v).unwrap()).collect();
    let criteria: Vec<Criterion> = vec![
        ("tree regularity", Box::new(tree_regularity)),
        ("rank two ways", Box::new(rank_two_ways)),
        ("gram properties", Box::new(gram_properties)),
        ("hecke suite", Box::new(hecke_suite)),
        ("degeneracy identity", Box::new(|| degeneracy_identity(&raisings))),
        ("ihara", Box::new(|| ihara(&raisings))),
        ("congruence module", Box::new(|| congruence_identities(&raisings))),
        ("level raising", Box::new(level_raising)),
        ("tower", Box::new(tower)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {:2} {name}: PASS ({secs:.1}s) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:2} {name}: FAIL ({secs:.1}s) {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.1}s", criteria.len() - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
