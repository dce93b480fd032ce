//! Compactly supported `Gamma`-invariant harmonic cochains on the tree,
//! represented by their values on the core edges of the quotient.
//!
//! A cochain is a vector indexed by the core edges (in edge-id order), the
//! value being `phi` on the stored orientation. It vanishes on every other
//! quotient edge: the pruned branches force this by harmonicity and compact
//! support forces it on the cusp rays.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::integer::prime_divisors;
use crate::arith::matrix::{IntMatrix, RatMatrix};
use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::quotient::{CycleSystem, QuotientGraph};
use crate::tree::OrientedEdge;

#[derive(Clone, Debug)]
pub struct CochainLattice {
    group: GroupSpec,
    /// Core edge ids; column `j` of `basis` is edge `edge_index[j]`.
    pub edge_index: Vec<usize>,
    col_of: HashMap<usize, usize>,
    /// Row `i` is `phi_i`.
    pub basis: IntMatrix,
    /// `n(e)` per column.
    pub weights: Vec<u64>,
    /// Column of the back edge of cycle `i`; `phi_i` is the only basis
    /// vector not vanishing there.
    pivots: Vec<usize>,
}

/// `phi_i(e) = ±n(e)` along the cycle `c_i`, zero elsewhere.
pub fn cochain_basis(q: &QuotientGraph, cs: &CycleSystem, weighted: bool) -> Result<CochainLattice> {
    let edge_index = q.core_edges();
    let weights: Vec<u64> = edge_index.iter().map(|&e| q.edges[e].n_e).collect();
    if !weighted {
        if let Some(w) = weights.iter().find(|&&w| w > 1) {
            return Err(Error::Weighted(format!(
                "core edge with n(e) = {w}; enable weighted mode"
            )));
        }
    }
    let col_of: HashMap<usize, usize> =
        edge_index.iter().enumerate().map(|(j, &e)| (e, j)).collect();
    let g = cs.cycles.len();
    let mut basis = IntMatrix::zeros(g, edge_index.len());
    let mut pivots = Vec::with_capacity(g);
    for (i, c) in cs.cycles.iter().enumerate() {
        for &(e, s) in &c.steps {
            let j = col_of[&e];
            let v = basis.get(i, j) + BigInt::from(s * weights[j] as i64);
            basis.set(i, j, v);
        }
        pivots.push(col_of[&c.back_edge]);
    }
    let lat = CochainLattice {
        group: q.spec().clone(),
        edge_index,
        col_of,
        basis,
        weights,
        pivots,
    };
    for i in 0..g {
        if !verify_harmonic(q, &lat, &lat.basis.row(i)) {
            return Err(Error::SolveFailed(format!("basis row {i} is not harmonic")));
        }
    }
    Ok(lat)
}

impl CochainLattice {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_index.len()
    }

    pub fn column_of(&self, edge: usize) -> Option<usize> {
        self.col_of.get(&edge).copied()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.iter().any(|&w| w > 1)
    }

    /// Edge values of `sum_i coords[i] phi_i`.
    pub fn values(&self, coords: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.num_edges()];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.basis.get(i, j);
                if !b.is_zero() {
                    *o += c * BigRational::from_integer(b.clone());
                }
            }
        }
        out
    }

    /// Coordinates of a cochain given by its edge values; errors when the
    /// values are not in the span of the basis.
    pub fn coords(&self, values: &[BigRational]) -> Result<Vec<BigRational>> {
        let coords: Vec<BigRational> = self
            .pivots
            .iter()
            .map(|&j| &values[j] / BigRational::from_integer(BigInt::from(self.weights[j])))
            .collect();
        if self.values(&coords) != values {
            return Err(Error::SolveFailed(
                "edge values are not in the span of the cochain basis".into(),
            ));
        }
        Ok(coords)
    }

    /// Value of a cochain (given by edge values) on an arbitrary oriented
    /// tree edge.
    pub fn eval_tree_edge(&self, q: &QuotientGraph, values: &[BigRational], e: &OrientedEdge) -> BigRational {
        match q.classify_edge(e) {
            Some((id, s)) => match self.column_of(id) {
                Some(j) if s > 0 => values[j].clone(),
                Some(j) => -values[j].clone(),
                None => BigRational::zero(),
            },
            None => BigRational::zero(),
        }
    }
}

/// Harmonicity at every vertex of the truncated quotient:
/// `sum_e (n(v)/n(e)) phi(e)` over edges oriented away from `v` vanishes.
/// `row` is indexed like the lattice columns.
pub fn verify_harmonic(q: &QuotientGraph, lat: &CochainLattice, row: &[BigInt]) -> bool {
    if row.len() != lat.num_edges() {
        return false;
    }
    let mut sums = vec![BigInt::zero(); q.vertices.len()];
    for (j, &e) in lat.edge_index.iter().enumerate() {
        let ed = &q.edges[e];
        let o = BigInt::from(q.vertices[ed.origin].raw_stab / ed.raw_stab);
        let t = BigInt::from(q.vertices[ed.terminus].raw_stab / ed.raw_stab);
        sums[ed.origin] += &o * &row[j];
        sums[ed.terminus] -= &t * &row[j];
    }
    sums.iter().all(|s| s.is_zero())
}

/// Independent description of the same space: the integer kernel of the
/// harmonicity system over all edges of the truncated quotient (rays set to
/// zero). Columns are kernel vectors indexed by edge id.
pub fn harmonic_kernel(q: &QuotientGraph) -> IntMatrix {
    let mut sys = IntMatrix::zeros(q.vertices.len(), q.edges.len());
    for (j, ed) in q.edges.iter().enumerate() {
        let o = BigInt::from(q.vertices[ed.origin].raw_stab / ed.raw_stab);
        let t = BigInt::from(q.vertices[ed.terminus].raw_stab / ed.raw_stab);
        sys.set(ed.origin, j, sys.get(ed.origin, j) + o);
        sys.set(ed.terminus, j, sys.get(ed.terminus, j) - t);
    }
    sys.integer_kernel()
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    pub entries: RatMatrix,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn is_integral(&self) -> bool {
        self.entries.is_integral()
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        self.entries.to_int()
    }

    /// Determinant; `1` for the empty matrix.
    pub fn det(&self) -> BigRational {
        if self.dim() == 0 {
            return BigRational::one();
        }
        self.entries.det().expect("square")
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries == self.entries.transpose()
    }

    /// All leading principal minors positive.
    pub fn is_positive_definite(&self) -> bool {
        (1..=self.dim()).all(|k| {
            let idx: Vec<usize> = (0..k).collect();
            self.entries
                .submatrix(&idx, &idx)
                .det()
                .map(|d| d.is_positive())
                .unwrap_or(false)
        })
    }
}

/// `(phi_i, phi_j) = sum_e phi_i(e) phi_j(e) / n(e)`.
pub fn gram_matrix(lat: &CochainLattice) -> GramMatrix {
    let g = lat.rank();
    let mut m = RatMatrix::zeros(g, g);
    for i in 0..g {
        for j in i..g {
            let mut s = BigRational::zero();
            for k in 0..lat.num_edges() {
                let a = lat.basis.get(i, k);
                let b = lat.basis.get(j, k);
                if !a.is_zero() && !b.is_zero() {
                    s += BigRational::new(a * b, BigInt::from(lat.weights[k]));
                }
            }
            m.set(i, j, s.clone());
            m.set(j, i, s);
        }
    }
    GramMatrix { entries: m }
}

/// Primes dividing the determinant of the intersection matrix. Only defined
/// when every core edge has trivial stabilizer.
pub fn s_gamma(lat: &CochainLattice, gram: &GramMatrix) -> Result<Vec<BigInt>> {
    if lat.is_weighted() {
        return Err(Error::Weighted(
            "S_Gamma is only defined when all n(e) = 1".into(),
        ));
    }
    let d = gram.det();
    Ok(prime_divisors(d.numer()))
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalJson {
    fn from(r: &BigRational) -> Self {
        RationalJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::FiniteField;
    use crate::arith::fqpoly::FqPoly;

    fn lattice(q: u64, n: &str, gamma: bool) -> (QuotientGraph, CochainLattice) {
        let f = FiniteField::new(q).unwrap();
        let n = FqPoly::parse(&f, n).unwrap();
        let spec = if gamma { GroupSpec::gamma(n) } else { GroupSpec::gamma0(n) }.unwrap();
        let g = QuotientGraph::build(&spec).unwrap();
        let cs = g.cycle_system().unwrap();
        let lat = cochain_basis(&g, &cs, true).unwrap();
        (g, lat)
    }

    #[test]
    fn rank_matches_kernel() {
        for (q, n, gamma) in [(2, "1,1,0,1", false), (2, "0,0,1", true), (3, "1,0,1", false)] {
            let (g, lat) = lattice(q, n, gamma);
            assert_eq!(lat.rank() as i64, g.euler_check());
            assert_eq!(harmonic_kernel(&g).cols(), lat.rank());
        }
    }

    #[test]
    fn gram_is_positive_and_counts_lengths() {
        let (_, lat) = lattice(2, "0,0,1", true);
        let gram = gram_matrix(&lat);
        assert!(gram.is_symmetric());
        assert!(gram.is_positive_definite());
        let gi = gram.to_int().unwrap();
        for i in 0..lat.rank() {
            let len = lat.basis.row(i).iter().filter(|x| !x.is_zero()).count();
            assert_eq!(gi.get(i, i), &BigInt::from(len));
        }
    }

    #[test]
    fn perturbed_row_fails() {
        let (g, lat) = lattice(2, "1,1,0,1", false);
        let mut row = lat.basis.row(0);
        assert!(verify_harmonic(&g, &lat, &row));
        row[0] += 1;
        assert!(!verify_harmonic(&g, &lat, &row));
        assert!(verify_harmonic(&g, &lat, &vec![BigInt::zero(); lat.num_edges()]));
    }

    #[test]
    fn s_gamma_of_small_matrices() {
        let f = FiniteField::new(2).unwrap();
        let spec = GroupSpec::full(&f);
        let dummy = CochainLattice {
            group: spec,
            edge_index: vec![],
            col_of: HashMap::new(),
            basis: IntMatrix::zeros(0, 0),
            weights: vec![],
            pivots: vec![],
        };
        let g = GramMatrix {
            entries: IntMatrix::from_i64_rows(&[vec![3, 1], vec![1, 4]]).to_rat(),
        };
        assert_eq!(s_gamma(&dummy, &g).unwrap(), vec![BigInt::from(11)]);
        let g = GramMatrix {
            entries: IntMatrix::from_i64_rows(&[vec![3, 0], vec![0, 4]]).to_rat(),
        };
        assert_eq!(s_gamma(&dummy, &g).unwrap(), vec![BigInt::from(2), BigInt::from(3)]);
        let empty = GramMatrix {
            entries: RatMatrix::zeros(0, 0),
        };
        assert!(s_gamma(&dummy, &empty).unwrap().is_empty());
    }
}
