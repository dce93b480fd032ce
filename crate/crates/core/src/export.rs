//! JSON, DOT and CSV renderings of the computed objects.
//!
//! JSON goes through `serde_json::Value`, whose maps are ordered by key, so
//! the output depends only on the data.

use std::fmt::Write as _;

use serde::Serialize;

use crate::congruence::{CongruenceReport, Verification};
use crate::error::{Error, Result};
use crate::groups::GroupSpecJson;
use crate::quotient::{CycleSystem, QuotientGraph};

#[derive(Serialize)]
struct VertexJson {
    id: usize,
    level: i64,
    lift: String,
    stab_order: u64,
    core: bool,
}

#[derive(Serialize)]
struct EdgeJson {
    id: usize,
    level: i64,
    origin: usize,
    terminus: usize,
    lift: [String; 2],
    n_e: u64,
    core: bool,
}

#[derive(Serialize)]
struct RayJson {
    base: usize,
    n_e: Vec<u64>,
}

#[derive(Serialize)]
struct CycleJson {
    back_edge: usize,
    steps: Vec<(usize, i64)>,
}

#[derive(Serialize)]
struct QuotientJson {
    spec: GroupSpecJson,
    stable_level: i64,
    genus: i64,
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
    rays: Vec<RayJson>,
    tree_edges: Vec<usize>,
    cycles: Vec<CycleJson>,
}

/// Pretty JSON with keys sorted at every depth and a trailing newline.
pub fn to_stable_json<T: Serialize>(x: &T) -> Result<String> {
    let v = serde_json::to_value(x).map_err(|e| Error::Io(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn quotient_json(g: &QuotientGraph, cs: &CycleSystem) -> Result<String> {
    let j = QuotientJson {
        spec: g.spec().to_json(),
        stable_level: g.stable_level(),
        genus: g.euler_check(),
        vertices: g
            .vertices
            .iter()
            .enumerate()
            .map(|(id, v)| VertexJson {
                id,
                level: v.level,
                lift: v.lift.text(),
                stab_order: v.stab_order,
                core: v.core,
            })
            .collect(),
        edges: g
            .edges
            .iter()
            .enumerate()
            .map(|(id, e)| EdgeJson {
                id,
                level: e.level,
                origin: e.origin,
                terminus: e.terminus,
                lift: [e.lift.origin.text(), e.lift.terminus.text()],
                n_e: e.n_e,
                core: e.core,
            })
            .collect(),
        rays: g
            .rays
            .iter()
            .map(|r| RayJson {
                base: r.base,
                n_e: r.n_e.clone(),
            })
            .collect(),
        tree_edges: cs.tree_edges.clone(),
        cycles: cs
            .cycles
            .iter()
            .map(|c| CycleJson {
                back_edge: c.back_edge,
                steps: c.steps.clone(),
            })
            .collect(),
    };
    to_stable_json(&j)
}

/// Core edges solid, pruned edges dotted, cusp rays dashed; edges labelled
/// by `n(e)`.
pub fn quotient_dot(g: &QuotientGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph quotient {{");
    let _ = writeln!(s, "  label=\"{}\";", g.spec().describe());
    for (i, v) in g.vertices.iter().enumerate() {
        let style = if v.core { "solid" } else { "dotted" };
        let _ = writeln!(
            s,
            "  v{i} [label=\"{}\", style={style}];",
            v.lift.text()
        );
    }
    for e in &g.edges {
        let style = if e.core { "solid" } else { "dotted" };
        let _ = writeln!(
            s,
            "  v{} -- v{} [label=\"{}\", style={style}];",
            e.origin, e.terminus, e.n_e
        );
    }
    for (k, r) in g.rays.iter().enumerate() {
        let labels: Vec<String> = r.n_e.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "  c{k} [label=\"cusp {k}\", shape=point];");
        let _ = writeln!(
            s,
            "  v{} -- c{k} [label=\"{},...\", style=dashed];",
            r.base,
            labels.join(",")
        );
    }
    s.push_str("}\n");
    s
}

pub const CONGRUENCE_HEADER: [&str; 7] =
    ["q", "n", "v", "eigen_factor", "resultant", "candidate_l", "verified"];

/// One row per (factor, theorem-covered prime), or a single row with empty
/// `candidate_l` for a factor without one; `verified` is empty when no
/// check ran.
pub fn congruence_rows(
    q: u64,
    n: &str,
    rep: &CongruenceReport,
    checks: &[Verification],
) -> Vec<[String; 7]> {
    let mut rows = Vec::new();
    for f in &rep.factors {
        let base = |l: &str, ver: String| {
            [
                q.to_string(),
                n.to_string(),
                rep.v.clone(),
                f.factor.clone(),
                f.resultant.to_string(),
                l.to_string(),
                ver,
            ]
        };
        let covered: Vec<_> = f.primes.iter().filter(|p| p.status == "theorem-covered").collect();
        if covered.is_empty() {
            rows.push(base("", String::new()));
        }
        for p in covered {
            let ver = p
                .l
                .parse::<u64>()
                .ok()
                .and_then(|l| checks.iter().find(|c| c.l == l))
                .map(|c| c.verified.to_string())
                .unwrap_or_default();
            rows.push(base(&p.l, ver));
        }
    }
    rows
}

pub fn congruence_csv(rows: &[[String; 7]]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CONGRUENCE_HEADER).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::FiniteField;
    use crate::groups::GroupSpec;

    #[test]
    fn full_group_dot_has_one_ray() {
        let f = FiniteField::new(2).unwrap();
        let g = QuotientGraph::build(&GroupSpec::full(&f)).unwrap();
        let dot = quotient_dot(&g);
        assert!(dot.starts_with("graph quotient {"));
        assert_eq!(dot.matches("style=dashed").count(), 1);
    }

    #[test]
    fn json_keys_sorted() {
        #[derive(Serialize)]
        struct X {
            b: u8,
            a: u8,
        }
        assert_eq!(to_stable_json(&X { b: 1, a: 2 }).unwrap(), "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
    }
}
