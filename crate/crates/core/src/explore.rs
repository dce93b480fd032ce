//! Direct exploration of `Gamma \ T` by walking the tree from the origin and
//! merging vertices with `equivalence_search`.
//!
//! Much slower than the coset model in [`crate::quotient`] and only meant
//! for small levels, where it serves as an independent cross-check.

use crate::error::{Error, Result};
use crate::groups::{equivalence_search, stabilizer_elements, GroupSpec, TreeObject};
use crate::tree::{reduce_vertex, OrientedEdge, TreeVertex};

#[derive(Clone, Debug)]
pub struct ExploredVertex {
    pub lift: TreeVertex,
    pub depth: usize,
    /// Stabilizer order modulo the center.
    pub stab_order: u64,
    /// Consecutive steps of ray shape ending here.
    pub ray_steps: usize,
    pub expanded: bool,
}

#[derive(Clone, Debug)]
pub struct ExploredEdge {
    pub lift: OrientedEdge,
    pub origin: usize,
    pub terminus: usize,
    pub n_e: u64,
}

#[derive(Clone, Debug)]
pub struct Exploration {
    pub vertices: Vec<ExploredVertex>,
    pub edges: Vec<ExploredEdge>,
    pub core_vertices: Vec<usize>,
    pub core_edges: Vec<usize>,
}

impl Exploration {
    /// Cycle rank of the core.
    pub fn genus(&self) -> i64 {
        // the core of a connected graph is connected
        let comps = if self.core_vertices.is_empty() { 0 } else { 1 };
        self.core_edges.len() as i64 - self.core_vertices.len() as i64 + comps
    }
}

struct State<'a> {
    spec: &'a GroupSpec,
    vertices: Vec<ExploredVertex>,
    vlevels: Vec<i64>,
    edges: Vec<ExploredEdge>,
    elevels: Vec<i64>,
}

impl State<'_> {
    fn equivalent(&self, a: TreeObject, b: TreeObject) -> bool {
        equivalence_search(self.spec, &a, &b, None).witness.is_some()
    }

    fn classify_vertex(&self, v: &TreeVertex) -> Option<usize> {
        let m = reduce_vertex(v).0;
        (0..self.vertices.len()).find(|&i| {
            self.vlevels[i] == m
                && self.equivalent(
                    TreeObject::Vertex(self.vertices[i].lift.clone()),
                    TreeObject::Vertex(v.clone()),
                )
        })
    }

    fn classify_edge(&self, e: &OrientedEdge) -> Option<usize> {
        let m = crate::tree::locate_edge(e).n;
        let r = e.reverse();
        (0..self.edges.len()).find(|&i| {
            self.elevels[i] == m
                && [e, &r].iter().any(|x| {
                    self.equivalent(
                        TreeObject::Edge(self.edges[i].lift.clone()),
                        TreeObject::Edge((*x).clone()),
                    )
                })
        })
    }

    fn stab(&self, g: &TreeObject) -> u64 {
        stabilizer_elements(self.spec, g).len() as u64 / self.spec.center_order()
    }
}

/// Breadth-first walk from the origin. A branch stops once three consecutive
/// classes each have a single neighbour class behind them and a single one
/// in front. Errors when unexpanded classes remain beyond `depth_cap`.
pub fn explore(spec: &GroupSpec, depth_cap: usize) -> Result<Exploration> {
    let f = spec.field();
    let mut st = State {
        spec,
        vertices: Vec::new(),
        vlevels: Vec::new(),
        edges: Vec::new(),
        elevels: Vec::new(),
    };
    let o = TreeVertex::origin(f);
    let s0 = st.stab(&TreeObject::Vertex(o.clone()));
    st.vertices.push(ExploredVertex {
        lift: o,
        depth: 0,
        stab_order: s0,
        ray_steps: 0,
        expanded: false,
    });
    st.vlevels.push(0);
    let mut next = 0usize;
    while next < st.vertices.len() {
        let i = next;
        next += 1;
        if st.vertices[i].ray_steps >= 3 {
            continue;
        }
        if st.vertices[i].depth >= depth_cap {
            return Err(Error::DepthCapExceeded(depth_cap));
        }
        st.vertices[i].expanded = true;
        let lift = st.vertices[i].lift.clone();
        let depth = st.vertices[i].depth;
        let mut neighbour_classes = Vec::new();
        let mut new_classes = Vec::new();
        for w in lift.neighbors() {
            let j = match st.classify_vertex(&w) {
                Some(j) => j,
                None => {
                    let s = st.stab(&TreeObject::Vertex(w.clone()));
                    st.vlevels.push(reduce_vertex(&w).0);
                    st.vertices.push(ExploredVertex {
                        lift: w.clone(),
                        depth: depth + 1,
                        stab_order: s,
                        ray_steps: 0,
                        expanded: false,
                    });
                    new_classes.push(st.vertices.len() - 1);
                    st.vertices.len() - 1
                }
            };
            if !neighbour_classes.contains(&j) {
                neighbour_classes.push(j);
            }
            let e = OrientedEdge::new(lift.clone(), w).expect("adjacent");
            if st.classify_edge(&e).is_none() {
                let n_e = st.stab(&TreeObject::Edge(e.clone()));
                st.elevels.push(crate::tree::locate_edge(&e).n);
                st.edges.push(ExploredEdge {
                    lift: e,
                    origin: i,
                    terminus: j,
                    n_e,
                });
            }
        }
        // ray shape: one class behind, one new class in front
        let older: Vec<_> = neighbour_classes.iter().filter(|&&j| j < i).collect();
        if neighbour_classes.len() == 2 && older.len() == 1 && new_classes.len() == 1 {
            let steps = st.vertices[i].ray_steps + 1;
            st.vertices[new_classes[0]].ray_steps = steps;
        }
    }

    // prune leaves
    let nv = st.vertices.len();
    let mut deg = vec![0usize; nv];
    for e in &st.edges {
        deg[e.origin] += 1;
        deg[e.terminus] += 1;
    }
    let mut alive_v = vec![true; nv];
    let mut alive_e = vec![true; st.edges.len()];
    loop {
        let mut changed = false;
        for v in 0..nv {
            if alive_v[v] && deg[v] == 1 {
                alive_v[v] = false;
                changed = true;
                for (k, e) in st.edges.iter().enumerate() {
                    if alive_e[k] && (e.origin == v || e.terminus == v) {
                        alive_e[k] = false;
                        deg[e.origin] -= 1;
                        deg[e.terminus] -= 1;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(Exploration {
        core_vertices: (0..nv).filter(|&v| alive_v[v]).collect(),
        core_edges: (0..st.edges.len()).filter(|&e| alive_e[e]).collect(),
        vertices: st.vertices,
        edges: st.edges,
    })
}
