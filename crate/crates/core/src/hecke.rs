//! Operators on cochain lattices: Hecke operators, Atkin-Lehner involutions
//! and the degeneracy maps between levels.
//!
//! Matrices act on coordinate column vectors: the image of `phi_j` is
//! `sum_i M[i][j] phi_i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::fqpoly::FqPoly;
use crate::arith::intpoly::IntPoly;
use crate::arith::matrix::{IntMatrix, RatMatrix};
use crate::cochains::{cochain_basis, gram_matrix, CochainLattice, GramMatrix};
use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::quotient::{CycleSystem, QuotientGraph};
use crate::tree::{OrientedEdge, PolyMat2};

/// Everything computed at one level.
pub struct Level {
    pub graph: QuotientGraph,
    pub cycles: CycleSystem,
    pub lattice: CochainLattice,
    pub gram: GramMatrix,
}

impl Level {
    pub fn build(spec: &GroupSpec, weighted: bool) -> Result<Self> {
        Self::from_graph(QuotientGraph::build(spec)?, weighted)
    }

    pub fn from_graph(graph: QuotientGraph, weighted: bool) -> Result<Self> {
        let cycles = graph.cycle_system()?;
        let lattice = cochain_basis(&graph, &cycles, weighted)?;
        let gram = gram_matrix(&lattice);
        Ok(Level {
            graph,
            cycles,
            lattice,
            gram,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        self.graph.spec()
    }

    pub fn genus(&self) -> usize {
        self.lattice.rank()
    }

    /// Lift of the core edge in column `j`.
    fn column_lift(&self, j: usize) -> &OrientedEdge {
        &self.graph.edges[self.lattice.edge_index[j]].lift
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OpKind {
    /// `T_v` of the double coset of `diag(v, 1)`.
    HeckeTau,
    /// `T_v = I w_v V`, by the coset sum.
    Hecke,
    AtkinLehner,
    Pullback,
    PullbackTwisted,
    Pushforward,
    PushforwardTwisted,
}

#[derive(Clone, Debug)]
pub struct HeckeMatrix {
    pub kind: OpKind,
    pub v: FqPoly,
    pub matrix: RatMatrix,
    pub source: GroupSpec,
    pub target: GroupSpec,
}

impl HeckeMatrix {
    pub fn to_int(&self) -> Result<IntMatrix> {
        self.matrix
            .to_int()
            .ok_or_else(|| Error::Weighted(format!("{:?} matrix is not integral", self.kind)))
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Matrix of `phi -> psi`, `psi(eps) = sum_k w_k phi(x_k)` where `terms(eps)`
/// lists the pairs `(x_k, w_k)` for the lift `eps` of each target core edge.
pub fn assemble<F>(src: &Level, tgt: &Level, terms: F) -> Result<RatMatrix>
where
    F: Fn(&OrientedEdge) -> Vec<(OrientedEdge, i64)> + Sync,
{
    let ncols = tgt.lattice.num_edges();
    // transfer: for each target column, (source column, weight)
    let transfer: Vec<Vec<(usize, i64)>> = (0..ncols)
        .into_par_iter()
        .map(|j| {
            let mut row = Vec::new();
            for (x, w) in terms(tgt.column_lift(j)) {
                if let Some((id, s)) = src.graph.classify_edge(&x) {
                    if let Some(k) = src.lattice.column_of(id) {
                        row.push((k, s * w));
                    }
                }
            }
            row
        })
        .collect();
    transfer_matrix(src, tgt, &transfer)
}

fn transfer_matrix(src: &Level, tgt: &Level, transfer: &[Vec<(usize, i64)>]) -> Result<RatMatrix> {
    let g_src = src.genus();
    let g_tgt = tgt.genus();
    let cols: Vec<Vec<BigRational>> = (0..g_src)
        .into_par_iter()
        .map(|k| {
            let phi = src.lattice.basis.row(k);
            let values: Vec<BigRational> = transfer
                .iter()
                .map(|row| {
                    let mut s = BigInt::zero();
                    for &(c, w) in row {
                        s += &phi[c] * w;
                    }
                    BigRational::from_integer(s)
                })
                .collect();
            tgt.lattice.coords(&values)
        })
        .collect::<Result<_>>()?;
    Ok(RatMatrix::from_cols(g_tgt, cols))
}

/// Representatives of `(Gamma ∩ Gamma_0(w)) \ Gamma`: the identity and
/// `[[1, 0], [C, 1]] [[1, B_x], [0, 1]]` with `C = 0 mod M, 1 mod w`,
/// `B_x = 0 mod M, x - 1 mod w`, `x` over residues mod `w`.
pub fn gamma0_coset_reps(spec: &GroupSpec, w: &FqPoly) -> Result<Vec<PolyMat2>> {
    let f = spec.field();
    let m = spec.modulus();
    if !m.gcd(w).is_one() {
        return Err(Error::IncompatibleLevels(format!(
            "{} is not coprime to the level",
            w.to_text()
        )));
    }
    let m_inv = m.inv_mod(w).expect("coprime");
    let c = &m * &m_inv;
    let one = FqPoly::one(f);
    let mut out = vec![PolyMat2::identity(f)];
    let dw = w.degree().unwrap_or(0);
    for x in FqPoly::all_below_degree(f, dw) {
        let b = &m * &(&(&x - &one) * &m_inv).rem(w);
        out.push(PolyMat2::lower(c.clone()).mul(&PolyMat2::upper(b)));
    }
    Ok(out)
}

fn check_prime(level: &Level, v: &FqPoly) -> Result<()> {
    if !v.is_irreducible() || !v.is_monic() {
        return Err(Error::Precondition(format!(
            "{} is not a monic irreducible",
            v.to_text()
        )));
    }
    if !level.spec().modulus().gcd(v).is_one() {
        return Err(Error::Precondition(format!(
            "{} divides the level",
            v.to_text()
        )));
    }
    Ok(())
}

/// `(T phi)(e) = sum_i phi(diag(v, 1) gamma_i e)`.
pub fn hecke_tau(level: &Level, v: &FqPoly) -> Result<HeckeMatrix> {
    check_prime(level, v)?;
    let f = level.spec().field();
    let tau = PolyMat2::diag(v.clone(), FqPoly::one(f));
    let deltas: Vec<PolyMat2> = gamma0_coset_reps(level.spec(), v)?
        .iter()
        .map(|g| tau.mul(g))
        .collect();
    let m = assemble(level, level, |e| deltas.iter().map(|d| (e.act(d), 1)).collect())?;
    Ok(HeckeMatrix {
        kind: OpKind::HeckeTau,
        v: v.clone(),
        matrix: m,
        source: level.spec().clone(),
        target: level.spec().clone(),
    })
}

/// The level `Gamma ∩ Gamma_0(v)` and its Atkin-Lehner matrix at `v`.
pub fn raised_spec(spec: &GroupSpec, v: &FqPoly) -> Result<(GroupSpec, PolyMat2)> {
    let big = spec.with_gamma0(v, 1)?;
    let w = big.atkin_lehner()?;
    Ok((big, w))
}

/// `s = [[1, e], [0, 1]] [[1, 0], [-e, 1]] [[1, e], [0, 1]]` with `e = 1` mod
/// the full-congruence part `n` and `e = 0` mod the Borel part, so that
/// `s = [[0, 1], [-1, 0]]` mod `n` and `s = 1` mod the Borel part; `s`
/// normalizes the group.
pub fn s_lift(spec: &GroupSpec) -> PolyMat2 {
    let f = spec.field();
    let n = spec.full_part();
    let b = spec.modulus().div_rem(&n).0;
    // e = b (b^{-1} mod n)
    let e = if n.is_one() {
        FqPoly::zero(f)
    } else {
        &b * &b.inv_mod(&n).expect("coprime parts")
    };
    let u = PolyMat2::upper(e.clone());
    u.mul(&PolyMat2::lower(-&e)).mul(&u)
}

/// `T_v` as the coset sum `sum_i phi(s diag(v, 1) gamma_i e)` over
/// `gamma_i` in `(Gamma ∩ Gamma_0(v)) \ Gamma`, `s` from [`s_lift`]. On
/// `Gamma(n)` and `Gamma_0(n)` this is `I w_v V` through the level
/// `Gamma ∩ Gamma_0(v)`.
pub fn hecke_matrix(level: &Level, v: &FqPoly) -> Result<HeckeMatrix> {
    check_prime(level, v)?;
    let f = level.spec().field();
    let w = s_lift(level.spec()).mul(&PolyMat2::diag(v.clone(), FqPoly::one(f)));
    let deltas: Vec<PolyMat2> = gamma0_coset_reps(level.spec(), v)?
        .iter()
        .map(|g| w.mul(g))
        .collect();
    let m = assemble(level, level, |e| deltas.iter().map(|d| (e.act(d), 1)).collect())?;
    Ok(HeckeMatrix {
        kind: OpKind::Hecke,
        v: v.clone(),
        matrix: m,
        source: level.spec().clone(),
        target: level.spec().clone(),
    })
}

/// `(w psi)(e) = psi(W e)` for the Atkin-Lehner matrix of the level.
pub fn atkin_lehner(level: &Level) -> Result<HeckeMatrix> {
    let spec = level.spec();
    let w = spec.atkin_lehner()?;
    let v = spec.v().cloned().unwrap_or_else(|| spec.n().clone());
    let m = assemble(level, level, |e| vec![(e.act(&w), 1)])?;
    Ok(HeckeMatrix {
        kind: OpKind::AtkinLehner,
        v,
        matrix: m,
        source: spec.clone(),
        target: spec.clone(),
    })
}

/// Checks `big ⊆ small` on generators of the coset space of `big`.
fn check_sublevel(small: &Level, big: &Level) -> Result<()> {
    let f = small.spec().field();
    if f != big.spec().field() {
        return Err(Error::IncompatibleLevels("different fields".into()));
    }
    // the modulus of the small level divides that of the big one, and every
    // element of the big group lies in the small one iff the congruence
    // conditions of the small level follow from those of the big level
    let ok = big.spec().modulus().rem(&small.spec().modulus()).is_zero()
        && small.spec().full_part().divides(&big.spec().full_part())
        && small
            .spec()
            .borel_parts()
            .iter()
            .all(|p| big.spec().modulus().rem(p).is_zero());
    if ok {
        Ok(())
    } else {
        Err(Error::IncompatibleLevels(format!(
            "{} is not contained in {}",
            big.spec().describe(),
            small.spec().describe()
        )))
    }
}

/// Image in the small quotient of every truncated edge of the big one:
/// `(small edge id or None on rays, index [Gamma_e : Gamma'_e'])`.
fn projection(small: &Level, big: &Level) -> Vec<(Option<usize>, u64)> {
    let cosets = big.graph.cosets();
    big.graph
        .edges
        .par_iter()
        .map(|e| {
            let x = small.graph.cosets().index_of(cosets.lift(e.rep));
            match small.graph.edge_class(e.level, x) {
                Some(id) => (Some(id), small.graph.edges[id].raw_stab / e.raw_stab),
                None => (None, 0),
            }
        })
        .collect()
}

/// `V: H(small) -> H(big)`, restriction of invariant cochains.
pub fn pullback(small: &Level, big: &Level) -> Result<HeckeMatrix> {
    check_sublevel(small, big)?;
    let proj = projection(small, big);
    let transfer: Vec<Vec<(usize, i64)>> = big
        .lattice
        .edge_index
        .iter()
        .map(|&e| match proj[e].0.and_then(|id| small.lattice.column_of(id)) {
            Some(k) => vec![(k, 1)],
            None => vec![],
        })
        .collect();
    Ok(HeckeMatrix {
        kind: OpKind::Pullback,
        v: big.spec().modulus(),
        matrix: transfer_matrix(small, big, &transfer)?,
        source: small.spec().clone(),
        target: big.spec().clone(),
    })
}

/// `I: H(big) -> H(small)`, the trace
/// `(I psi)(e) = sum_{e' over e} [Gamma_e : Gamma'_e'] psi(e')`.
pub fn pushforward(big: &Level, small: &Level) -> Result<HeckeMatrix> {
    check_sublevel(small, big)?;
    let proj = projection(small, big);
    let mut transfer: Vec<Vec<(usize, i64)>> = vec![Vec::new(); small.lattice.num_edges()];
    for (e, &(id, idx)) in proj.iter().enumerate() {
        let (Some(id), Some(k)) = (id, big.lattice.column_of(e)) else {
            continue;
        };
        if let Some(j) = small.lattice.column_of(id) {
            transfer[j].push((k, idx as i64));
        }
    }
    Ok(HeckeMatrix {
        kind: OpKind::Pushforward,
        v: big.spec().modulus(),
        matrix: transfer_matrix(big, small, &transfer)?,
        source: big.spec().clone(),
        target: small.spec().clone(),
    })
}

pub struct Degeneracy {
    pub v_plain: HeckeMatrix,
    pub v_twisted: HeckeMatrix,
    pub i_plain: HeckeMatrix,
    pub i_twisted: HeckeMatrix,
    pub w_big: HeckeMatrix,
}

/// `V`, `w V`, `I`, `I w` between `small` and `big = small ∩ Gamma_0(v)`.
pub fn degeneracy_maps(small: &Level, big: &Level) -> Result<Degeneracy> {
    let v_plain = pullback(small, big)?;
    let i_plain = pushforward(big, small)?;
    let w_big = atkin_lehner(big)?;
    let v_twisted = HeckeMatrix {
        kind: OpKind::PullbackTwisted,
        matrix: &w_big.matrix * &v_plain.matrix,
        ..v_plain.clone()
    };
    let i_twisted = HeckeMatrix {
        kind: OpKind::PushforwardTwisted,
        matrix: &i_plain.matrix * &w_big.matrix,
        ..i_plain.clone()
    };
    Ok(Degeneracy {
        v_plain,
        v_twisted,
        i_plain,
        i_twisted,
        w_big,
    })
}

/// `T_v` through the raised level: `I w_v V`.
pub fn hecke_via_degeneracy(small: &Level, big: &Level) -> Result<RatMatrix> {
    let d = degeneracy_maps(small, big)?;
    Ok(&d.i_twisted.matrix * &d.v_plain.matrix)
}

pub fn char_poly_of(m: &IntMatrix) -> Result<IntPoly> {
    if m.rows() == 0 && m.cols() == 0 {
        return Ok(IntPoly::one());
    }
    m.char_poly()
}

/// `G M = M^T G`.
pub fn is_self_adjoint(m: &RatMatrix, gram: &GramMatrix) -> bool {
    &gram.entries * m == &m.transpose() * &gram.entries
}

pub struct OldNew {
    /// Columns spanning the old space (rational, in big-level coordinates).
    pub old: RatMatrix,
    /// Integral basis of `new ∩ L_big`, as columns.
    pub new: IntMatrix,
}

/// Old space `span(V | wV)` and its Gram-orthogonal complement.
pub fn old_new_split(big: &Level, d: &Degeneracy) -> Result<OldNew> {
    let old = d.v_plain.matrix.hstack(&d.v_twisted.matrix);
    // new = ker(old^T G)
    let a = &old.transpose() * &big.gram.entries;
    let den = a.common_denominator();
    let a_int = a
        .scale(&BigRational::from_integer(den))
        .to_int()
        .expect("cleared denominators");
    let new = a_int.integer_kernel();
    Ok(OldNew { old, new })
}

/// `X` with `M B = B X` for a subspace basis `B` (columns) stable under `M`.
pub fn restrict(m: &RatMatrix, basis: &RatMatrix) -> Result<RatMatrix> {
    if basis.cols() == 0 {
        return Ok(RatMatrix::zeros(0, 0));
    }
    let image = m * basis;
    // pick a maximal independent set of rows of the basis
    let mut t = basis.transpose();
    let pivots = t.rref_in_place();
    let sub = basis.submatrix(&pivots, &(0..basis.cols()).collect::<Vec<_>>());
    let rhs = image.submatrix(&pivots, &(0..image.cols()).collect::<Vec<_>>());
    let x = sub.solve(&rhs)?;
    if (basis * &x) != image {
        return Err(Error::SolveFailed("subspace is not stable".into()));
    }
    Ok(x)
}

/// `k` times the identity, as a rational matrix.
pub fn scalar(n: usize, k: i64) -> RatMatrix {
    RatMatrix::identity(n).scale(&rat(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::FiniteField;

    fn poly(f: &FiniteField, s: &str) -> FqPoly {
        FqPoly::parse(f, s).unwrap()
    }

    #[test]
    fn coset_reps_count() {
        let f = FiniteField::new(3).unwrap();
        let spec = GroupSpec::gamma(poly(&f, "0,1")).unwrap();
        let v = poly(&f, "1,0,1");
        let reps = gamma0_coset_reps(&spec, &v).unwrap();
        assert_eq!(reps.len(), 10);
        assert!(reps.iter().all(|g| spec.contains(g)));
    }

    #[test]
    fn gamma0_paths_agree() {
        let f = FiniteField::new(2).unwrap();
        let small = Level::build(&GroupSpec::gamma0(poly(&f, "1,1,0,1")).unwrap(), true).unwrap();
        for v in ["0,1", "1,1"] {
            let v = poly(&f, v);
            let (bs, _) = raised_spec(small.spec(), &v).unwrap();
            let big = Level::build(&bs, true).unwrap();
            let t = hecke_matrix(&small, &v).unwrap();
            let t2 = hecke_via_degeneracy(&small, &big).unwrap();
            assert_eq!(t.matrix, t2);
            assert_eq!(hecke_tau(&small, &v).unwrap().matrix, t.matrix);
            assert!(is_self_adjoint(&t.matrix, &small.gram));
            let d = degeneracy_maps(&small, &big).unwrap();
            assert_eq!(
                &d.i_plain.matrix * &d.v_plain.matrix,
                scalar(small.genus(), 3)
            );
            let w2 = &d.w_big.matrix * &d.w_big.matrix;
            assert_eq!(w2, scalar(big.genus(), 1));
        }
    }
}
