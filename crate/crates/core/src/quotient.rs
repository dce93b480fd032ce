//! The quotient graph `Gamma \ T`.
//!
//! Every vertex of the tree is `SL(2, A)`-equivalent to exactly one
//! `Lambda_m`, `m >= 0`, and every oriented edge to exactly one `e_m` or its
//! reverse. Hence the vertices of `Gamma \ T` at level `m` are the double
//! cosets `Gamma \ SL(2, A) / G_m` with `G_m = Stab(Lambda_m)`, i.e. the
//! orbits of `G_m` acting on the finite coset space `X = Gamma \ SL(2, A)` by
//! right multiplication, and similarly for edges. The stabilizer in `Gamma` of
//! `g Lambda_m` is conjugate to the stabilizer of the coset `Gamma g` in `G_m`,
//! so its order is `|G_m| / |orbit|`.
//!
//! `G_0 = SL(2, F_q)`, and for `m >= 1`, `G_m` consists of
//! `[[a, b], [0, 1/a]]` with `deg b <= m`. Once `m >= max(1, deg N - 1)` the
//! image of `G_m` in `SL(2, A/N)` no longer grows, so from that level on the
//! quotient is a union of half-lines (cusps).

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;

use crate::arith::field::FiniteField;
use crate::arith::fqpoly::FqPoly;
use crate::error::{Error, Result};
use crate::groups::{CosetKey, GroupSpec};
use crate::tree::{OrientedEdge, PolyMat2, TreeVertex};

/// The finite set `Gamma \ SL(2, A)` with a lift in `SL(2, A)` per coset.
pub struct CosetSpace {
    spec: GroupSpec,
    keys: Vec<CosetKey>,
    index: HashMap<CosetKey, usize>,
    lifts: Vec<PolyMat2>,
}

impl CosetSpace {
    /// Breadth-first enumeration from the identity coset using right
    /// multiplication by elementary matrices `[[1, c t^i], [0, 1]]`,
    /// `[[1, 0], [c t^i, 1]]`, `i < deg N`, `c` in an `F_p`-basis of `F_q`.
    pub fn build(spec: &GroupSpec) -> Self {
        let f = spec.field().clone();
        let deg = spec.modulus().degree().unwrap_or(0);
        let mut gens = Vec::new();
        for i in 0..deg {
            for c in f.additive_basis() {
                let x = FqPoly::monomial(&f, c, i);
                gens.push(PolyMat2::upper(x.clone()));
                gens.push(PolyMat2::lower(x));
            }
        }
        let id = PolyMat2::identity(&f);
        let k0 = spec.coset_key(&id);
        let mut keys = vec![k0.clone()];
        let mut lifts = vec![id];
        let mut index = HashMap::from([(k0, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let h = lifts[i].mul(g);
                let k = spec.coset_key(&h);
                if !index.contains_key(&k) {
                    index.insert(k.clone(), keys.len());
                    queue.push_back(keys.len());
                    keys.push(k);
                    lifts.push(h);
                }
            }
        }
        CosetSpace {
            spec: spec.clone(),
            keys,
            index,
            lifts,
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn lift(&self, i: usize) -> &PolyMat2 {
        &self.lifts[i]
    }

    pub fn key(&self, i: usize) -> &CosetKey {
        &self.keys[i]
    }

    /// Index of the coset `Gamma g`, `g` in `SL(2, A)`.
    pub fn index_of(&self, g: &PolyMat2) -> usize {
        let k = self.spec.coset_key(g);
        *self.index.get(&k).expect("coset space is complete")
    }

    /// The permutation `Gamma g -> Gamma g h`.
    pub fn right_perm(&self, h: &PolyMat2) -> Vec<usize> {
        self.lifts
            .par_iter()
            .map(|g| self.index_of(&g.mul(h)))
            .collect()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbits of the group generated by the given permutations: per-element
/// orbit id (orbits numbered by least element) and the orbit sizes.
fn orbits(size: usize, perms: &[&Vec<usize>]) -> (Vec<usize>, Vec<usize>) {
    let mut parent: Vec<usize> = (0..size).collect();
    for p in perms {
        for (x, &y) in p.iter().enumerate() {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    let mut id = vec![usize::MAX; size];
    let mut sizes = Vec::new();
    let mut root_id: HashMap<usize, usize> = HashMap::new();
    for x in 0..size {
        let r = find(&mut parent, x);
        let next = root_id.len();
        let o = *root_id.entry(r).or_insert(next);
        if o == sizes.len() {
            sizes.push(0);
        }
        sizes[o] += 1;
        id[x] = o;
    }
    (id, sizes)
}

#[derive(Clone, Debug)]
pub struct QVertex {
    /// `m` with the class containing `Lambda_m`-translates.
    pub level: i64,
    /// Least coset index in the orbit.
    pub rep: usize,
    pub lift: TreeVertex,
    /// Stabilizer order modulo `Gamma ∩ Z`.
    pub stab_order: u64,
    /// Stabilizer order in `Gamma`.
    pub raw_stab: u64,
    pub core: bool,
}

#[derive(Clone, Debug)]
pub struct QEdge {
    /// The class of `g e_m`, oriented from level `m` to level `m + 1`.
    pub level: i64,
    pub rep: usize,
    pub lift: OrientedEdge,
    pub origin: usize,
    pub terminus: usize,
    /// `n(e)`: stabilizer order modulo `Gamma ∩ Z`.
    pub n_e: u64,
    pub raw_stab: u64,
    pub core: bool,
}

/// A cusp: the half-line of classes above a vertex at the stable level.
#[derive(Clone, Debug)]
pub struct CuspRay {
    pub base: usize,
    /// `n(e)` of the first three ray edges, growing by a factor `q`.
    pub n_e: Vec<u64>,
}

pub struct QuotientGraph {
    spec: GroupSpec,
    cosets: Arc<CosetSpace>,
    stable_level: i64,
    pub vertices: Vec<QVertex>,
    pub edges: Vec<QEdge>,
    pub rays: Vec<CuspRay>,
    /// per level `m <= L`: coset -> vertex id
    vertex_of: Vec<Vec<usize>>,
    /// per level `m < L`: coset -> edge id
    edge_of: Vec<Vec<usize>>,
}

/// Level `L` past which every class lies on a cusp ray: `max(1, deg N - 1)`
/// for the modulus `N`.
pub fn stable_level_of(spec: &GroupSpec) -> i64 {
    let deg = spec.modulus().degree().unwrap_or(0) as i64;
    (deg - 1).max(1)
}

/// Order of `G_m` (vertex stabilizer of `Lambda_m` in `SL(2, A)`).
fn vertex_group_order(q: u64, m: i64) -> u64 {
    if m == 0 {
        q * (q * q - 1)
    } else {
        (q - 1) * q.pow(m as u32 + 1)
    }
}

/// Order of the stabilizer of `e_m` in `SL(2, A)`.
fn edge_group_order(q: u64, m: i64) -> u64 {
    if m == 0 {
        (q - 1) * q
    } else {
        vertex_group_order(q, m)
    }
}

impl QuotientGraph {
    pub fn build(spec: &GroupSpec) -> Result<Self> {
        Self::from_cosets(Arc::new(CosetSpace::build(spec)))
    }

    pub fn from_cosets(cosets: Arc<CosetSpace>) -> Result<Self> {
        let spec = cosets.spec().clone();
        let f = spec.field().clone();
        let q = f.order();
        let stable = stable_level_of(&spec);
        let z = spec.center_order();
        let size = cosets.len();

        // generator permutations
        let basis = f.additive_basis();
        let alpha = f.primitive_element();
        let alpha_inv = f.inv(alpha).expect("nonzero");
        let diag = cosets.right_perm(&PolyMat2::diag(
            FqPoly::constant(&f, alpha),
            FqPoly::constant(&f, alpha_inv),
        ));
        let mut upper: Vec<Vec<Vec<usize>>> = Vec::new();
        for i in 0..=stable {
            upper.push(
                basis
                    .iter()
                    .map(|&c| cosets.right_perm(&PolyMat2::upper(FqPoly::monomial(&f, c, i as usize))))
                    .collect(),
            );
        }
        let lower0: Vec<Vec<usize>> = basis
            .iter()
            .map(|&c| cosets.right_perm(&PolyMat2::lower(FqPoly::constant(&f, c))))
            .collect();

        let vertex_perms = |m: i64| -> Vec<&Vec<usize>> {
            if m == 0 {
                upper[0].iter().chain(lower0.iter()).collect()
            } else {
                let mut v: Vec<&Vec<usize>> = vec![&diag];
                for i in 0..=m {
                    v.extend(upper[i as usize].iter());
                }
                v
            }
        };
        let edge_perms = |m: i64| -> Vec<&Vec<usize>> {
            if m == 0 {
                let mut v: Vec<&Vec<usize>> = vec![&diag];
                v.extend(upper[0].iter());
                v
            } else {
                vertex_perms(m)
            }
        };

        // vertices, levels 0..=L
        struct RawV {
            level: i64,
            rep: usize,
            size: usize,
        }
        let mut raw_vertices: Vec<RawV> = Vec::new();
        let mut vertex_orbit: Vec<Vec<usize>> = Vec::new();
        let mut vertex_offset = Vec::new();
        for m in 0..=stable {
            let (id, sizes) = orbits(size, &vertex_perms(m));
            let mut reps = vec![usize::MAX; sizes.len()];
            for (x, &o) in id.iter().enumerate() {
                reps[o] = reps[o].min(x);
            }
            vertex_offset.push(raw_vertices.len());
            for (o, &s) in sizes.iter().enumerate() {
                raw_vertices.push(RawV { level: m, rep: reps[o], size: s });
            }
            vertex_orbit.push(id);
        }
        // edges, levels 0..L
        struct RawE {
            level: i64,
            rep: usize,
            size: usize,
            origin: usize,
            terminus: usize,
        }
        let mut raw_edges: Vec<RawE> = Vec::new();
        let mut edge_orbit: Vec<Vec<usize>> = Vec::new();
        let mut edge_offset = Vec::new();
        for m in 0..stable {
            let (id, sizes) = orbits(size, &edge_perms(m));
            let mut reps = vec![usize::MAX; sizes.len()];
            for (x, &o) in id.iter().enumerate() {
                reps[o] = reps[o].min(x);
            }
            edge_offset.push(raw_edges.len());
            for (o, &s) in sizes.iter().enumerate() {
                let x = reps[o];
                let origin = vertex_offset[m as usize] + vertex_orbit[m as usize][x];
                let terminus = vertex_offset[m as usize + 1] + vertex_orbit[m as usize + 1][x];
                raw_edges.push(RawE {
                    level: m,
                    rep: x,
                    size: s,
                    origin,
                    terminus,
                });
            }
            edge_orbit.push(id);
        }

        // lifts and deterministic ordering
        let vlift: Vec<TreeVertex> = raw_vertices
            .par_iter()
            .map(|v| TreeVertex::standard(&f, v.level).act(cosets.lift(v.rep)))
            .collect();
        let mut vorder: Vec<usize> = (0..raw_vertices.len()).collect();
        vorder.sort_by(|&a, &b| {
            (raw_vertices[a].level, vlift[a].text(), raw_vertices[a].rep)
                .cmp(&(raw_vertices[b].level, vlift[b].text(), raw_vertices[b].rep))
        });
        let mut vnew = vec![0usize; raw_vertices.len()];
        for (new, &old) in vorder.iter().enumerate() {
            vnew[old] = new;
        }
        let elift: Vec<OrientedEdge> = raw_edges
            .par_iter()
            .map(|e| OrientedEdge::standard(&f, e.level).act(cosets.lift(e.rep)))
            .collect();
        let mut eorder: Vec<usize> = (0..raw_edges.len()).collect();
        let ekey = |i: usize| {
            (
                raw_edges[i].level,
                elift[i].origin.text(),
                elift[i].terminus.text(),
                raw_edges[i].rep,
            )
        };
        eorder.sort_by_key(|&i| ekey(i));
        let mut enew = vec![0usize; raw_edges.len()];
        for (new, &old) in eorder.iter().enumerate() {
            enew[old] = new;
        }

        let vertices: Vec<QVertex> = vorder
            .iter()
            .map(|&old| {
                let rv = &raw_vertices[old];
                let raw = vertex_group_order(q, rv.level) / rv.size as u64;
                QVertex {
                    level: rv.level,
                    rep: rv.rep,
                    lift: vlift[old].clone(),
                    stab_order: raw / z,
                    raw_stab: raw,
                    core: false,
                }
            })
            .collect();
        let edges: Vec<QEdge> = eorder
            .iter()
            .map(|&old| {
                let re = &raw_edges[old];
                let raw = edge_group_order(q, re.level) / re.size as u64;
                QEdge {
                    level: re.level,
                    rep: re.rep,
                    lift: elift[old].clone(),
                    origin: vnew[re.origin],
                    terminus: vnew[re.terminus],
                    n_e: raw / z,
                    raw_stab: raw,
                    core: false,
                }
            })
            .collect();
        let vertex_of: Vec<Vec<usize>> = vertex_orbit
            .iter()
            .enumerate()
            .map(|(m, ids)| ids.iter().map(|&o| vnew[vertex_offset[m] + o]).collect())
            .collect();
        let edge_of: Vec<Vec<usize>> = edge_orbit
            .iter()
            .enumerate()
            .map(|(m, ids)| ids.iter().map(|&o| enew[edge_offset[m] + o]).collect())
            .collect();

        let mut rays: Vec<CuspRay> = vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.level == stable)
            .map(|(i, v)| {
                let orbit = vertex_group_order(q, stable) / v.raw_stab;
                let n_e = (0..3)
                    .map(|j| edge_group_order(q, stable + j) / orbit / z)
                    .collect();
                CuspRay { base: i, n_e }
            })
            .collect();
        rays.sort_by_key(|r| r.base);

        let mut g = QuotientGraph {
            spec,
            cosets,
            stable_level: stable,
            vertices,
            edges,
            rays,
            vertex_of,
            edge_of,
        };
        g.mark_core();
        Ok(g)
    }

    /// Prunes degree-one vertices of the truncated graph until none remain.
    fn mark_core(&mut self) {
        let nv = self.vertices.len();
        let mut deg = vec![0usize; nv];
        let mut alive_e = vec![true; self.edges.len()];
        let mut alive_v = vec![true; nv];
        let mut inc: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (i, e) in self.edges.iter().enumerate() {
            deg[e.origin] += 1;
            deg[e.terminus] += 1;
            inc[e.origin].push(i);
            inc[e.terminus].push(i);
        }
        let mut stack: Vec<usize> = (0..nv).filter(|&v| deg[v] == 1).collect();
        while let Some(v) = stack.pop() {
            if !alive_v[v] || deg[v] != 1 {
                continue;
            }
            alive_v[v] = false;
            for &e in &inc[v] {
                if alive_e[e] {
                    alive_e[e] = false;
                    let o = &self.edges[e];
                    let w = if o.origin == v { o.terminus } else { o.origin };
                    deg[v] -= 1;
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        stack.push(w);
                    }
                }
            }
        }
        for (v, a) in alive_v.iter().enumerate() {
            self.vertices[v].core = *a;
        }
        for (e, a) in alive_e.iter().enumerate() {
            self.edges[e].core = *a;
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn field(&self) -> &FiniteField {
        self.spec.field()
    }

    pub fn cosets(&self) -> &Arc<CosetSpace> {
        &self.cosets
    }

    /// Level from which the quotient consists of cusp half-lines.
    pub fn stable_level(&self) -> i64 {
        self.stable_level
    }

    pub fn vertex_class(&self, level: i64, coset: usize) -> Option<usize> {
        self.vertex_of.get(level as usize).map(|ids| ids[coset])
    }

    /// Edge class of `g e_m` for the coset of `g`; `None` on cusp rays.
    pub fn edge_class(&self, level: i64, coset: usize) -> Option<usize> {
        self.edge_of.get(level as usize).map(|ids| ids[coset])
    }

    /// Quotient class of an arbitrary oriented tree edge: `(edge id, sign)`,
    /// sign `-1` when the tree edge maps to the reverse of the stored
    /// orientation; `None` on cusp rays.
    pub fn classify_edge(&self, e: &OrientedEdge) -> Option<(usize, i64)> {
        let loc = crate::tree::locate_edge(e);
        let x = self.cosets.index_of(&loc.s);
        self.edge_class(loc.n, x)
            .map(|id| (id, if loc.reversed { -1 } else { 1 }))
    }

    pub fn core_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].core).collect()
    }

    pub fn core_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].core).collect()
    }

    pub fn has_weights(&self) -> bool {
        self.core_edges().iter().any(|&e| self.edges[e].n_e > 1)
    }

    fn core_components(&self) -> usize {
        let cv = self.core_vertices();
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        for e in self.core_edges() {
            let (a, b) = (
                find(&mut parent, self.edges[e].origin),
                find(&mut parent, self.edges[e].terminus),
            );
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut roots: Vec<usize> = cv.iter().map(|&v| find(&mut parent, v)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// `|E_core| - |V_core| + #components`.
    pub fn euler_check(&self) -> i64 {
        self.core_edges().len() as i64 - self.core_vertices().len() as i64
            + self.core_components() as i64
    }

    /// For each vertex, `sum_e raw_stab(v) / raw_stab(e)` over incident
    /// quotient edges including the ray edge; must equal `q + 1`.
    pub fn degree_sums(&self) -> Vec<u64> {
        let mut sums = vec![0u64; self.vertices.len()];
        for e in &self.edges {
            sums[e.origin] += self.vertices[e.origin].raw_stab / e.raw_stab;
            sums[e.terminus] += self.vertices[e.terminus].raw_stab / e.raw_stab;
        }
        let q = self.field().order();
        let z = self.spec.center_order();
        for ray in &self.rays {
            let v = &self.vertices[ray.base];
            sums[ray.base] += v.raw_stab / (ray.n_e[0] * z);
        }
        // the level-0 vertices have no down-edges and the top ones no up-edge
        // inside the truncation, both handled above
        let _ = q;
        sums
    }

    /// Spanning tree of the core (breadth first from the least core vertex,
    /// edges in id order) and one cycle per remaining edge.
    pub fn cycle_system(&self) -> Result<CycleSystem> {
        let comps = self.core_components();
        if comps > 1 {
            return Err(Error::DisconnectedCore(comps));
        }
        let cv = self.core_vertices();
        let ce = self.core_edges();
        if cv.is_empty() {
            return Ok(CycleSystem::default());
        }
        let mut inc: HashMap<usize, Vec<usize>> = HashMap::new();
        for &e in &ce {
            inc.entry(self.edges[e].origin).or_default().push(e);
            inc.entry(self.edges[e].terminus).or_default().push(e);
        }
        let root = cv[0];
        let mut parent_edge: HashMap<usize, usize> = HashMap::new();
        let mut depth: HashMap<usize, usize> = HashMap::from([(root, 0)]);
        let mut in_tree = vec![false; self.edges.len()];
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in inc.get(&v).map(|x| x.as_slice()).unwrap_or(&[]) {
                let ed = &self.edges[e];
                let w = if ed.origin == v { ed.terminus } else { ed.origin };
                if depth.contains_key(&w) {
                    continue;
                }
                depth.insert(w, depth[&v] + 1);
                parent_edge.insert(w, e);
                in_tree[e] = true;
                queue.push_back(w);
            }
        }
        let tree_edges: Vec<usize> = ce.iter().copied().filter(|&e| in_tree[e]).collect();
        let back_edges: Vec<usize> = ce.iter().copied().filter(|&e| !in_tree[e]).collect();
        let other = |e: usize, v: usize| {
            let ed = &self.edges[e];
            if ed.origin == v {
                ed.terminus
            } else {
                ed.origin
            }
        };
        let step = |e: usize, from: usize| -> (usize, i64) {
            if self.edges[e].origin == from {
                (e, 1)
            } else {
                (e, -1)
            }
        };
        let mut cycles = Vec::new();
        for &b in &back_edges {
            let (o, t) = (self.edges[b].origin, self.edges[b].terminus);
            // walk t and o up to their common ancestor
            let mut path_t = Vec::new();
            let mut path_o = Vec::new();
            let (mut x, mut y) = (t, o);
            while depth[&x] > depth[&y] {
                let e = parent_edge[&x];
                path_t.push(step(e, x));
                x = other(e, x);
            }
            while depth[&y] > depth[&x] {
                let e = parent_edge[&y];
                path_o.push(step(e, y));
                y = other(e, y);
            }
            while x != y {
                let e = parent_edge[&x];
                path_t.push(step(e, x));
                x = other(e, x);
                let e = parent_edge[&y];
                path_o.push(step(e, y));
                y = other(e, y);
            }
            let mut steps = vec![(b, 1)];
            steps.extend(path_t);
            steps.extend(path_o.into_iter().rev().map(|(e, s)| (e, -s)));
            cycles.push(Cycle {
                back_edge: b,
                steps,
            });
        }
        Ok(CycleSystem {
            tree_edges,
            back_edges,
            cycles,
        })
    }
}

/// A closed path: `(edge id, +1 along / -1 against the stored orientation)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub back_edge: usize,
    pub steps: Vec<(usize, i64)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleSystem {
    pub tree_edges: Vec<usize>,
    pub back_edges: Vec<usize>,
    pub cycles: Vec<Cycle>,
}

impl CycleSystem {
    pub fn genus(&self) -> usize {
        self.cycles.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &FiniteField, s: &str) -> FqPoly {
        FqPoly::parse(f, s).unwrap()
    }

    #[test]
    fn coset_space_size_is_index() {
        let f = FiniteField::new(2).unwrap();
        for spec in [
            GroupSpec::full(&f),
            GroupSpec::gamma(poly(&f, "0,1")).unwrap(),
            GroupSpec::gamma0(poly(&f, "1,1,1")).unwrap(),
            GroupSpec::gamma0(poly(&f, "0,0,1")).unwrap(),
            GroupSpec::gamma0_cap_gamma(poly(&f, "0,1"), poly(&f, "1,1"), 1).unwrap(),
        ] {
            let x = CosetSpace::build(&spec);
            assert_eq!(x.len() as u64, spec.index_in_sl2(), "{spec:?}");
        }
    }

    #[test]
    fn full_group_is_a_half_line() {
        let f = FiniteField::new(3).unwrap();
        let g = QuotientGraph::build(&GroupSpec::full(&f)).unwrap();
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.rays.len(), 1);
        assert_eq!(g.euler_check(), 0);
        assert_eq!(g.cycle_system().unwrap().genus(), 0);
        for s in g.degree_sums() {
            assert_eq!(s, 4);
        }
    }

    #[test]
    fn degree_balance() {
        let f = FiniteField::new(2).unwrap();
        for spec in [
            GroupSpec::gamma(poly(&f, "0,1")).unwrap(),
            GroupSpec::gamma0(poly(&f, "1,1,0,1")).unwrap(),
            GroupSpec::gamma(poly(&f, "1,1,1")).unwrap(),
        ] {
            let g = QuotientGraph::build(&spec).unwrap();
            for s in g.degree_sums() {
                assert_eq!(s, 3, "{spec:?}");
            }
            let cs = g.cycle_system().unwrap();
            assert_eq!(cs.genus() as i64, g.euler_check());
        }
    }
}
