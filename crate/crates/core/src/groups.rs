//! Congruence subgroups of `SL(2, F_q[t])`: descriptors, membership, index,
//! right-coset invariants, Atkin–Lehner elements and a bounded search for
//! elements carrying one tree object to another.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::field::FiniteField;
use crate::arith::fqpoly::FqPoly;
use crate::error::{Error, Result};
use crate::tree::{OrientedEdge, PolyMat2, TreeVertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    /// `Gamma(n)`
    GammaN,
    /// `Gamma_0(v^r) ∩ Gamma(n)`
    #[serde(rename = "Gamma0vR_cap_GammaN")]
    Gamma0vRCapGammaN,
    /// `Gamma_0(n v^r)`
    Gamma0Only,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::GammaN => "GammaN",
            Flavor::Gamma0vRCapGammaN => "Gamma0vR_cap_GammaN",
            Flavor::Gamma0Only => "Gamma0Only",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "GammaN" => Ok(Flavor::GammaN),
            "Gamma0vR_cap_GammaN" => Ok(Flavor::Gamma0vRCapGammaN),
            "Gamma0Only" => Ok(Flavor::Gamma0Only),
            _ => Err(Error::Parse(format!("unknown flavor '{s}'"))),
        }
    }
}

/// A congruence subgroup of `SL(2, A)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    field: FiniteField,
    n: FqPoly,
    v: Option<FqPoly>,
    r: u32,
    flavor: Flavor,
    /// (prime, prime power) for each Borel modulus
    borel: Vec<(FqPoly, FqPoly)>,
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// Wire format of a [`GroupSpec`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupSpecJson {
    pub q: u64,
    pub n: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<String>,
    #[serde(default)]
    pub r: u32,
    pub flavor: Flavor,
}

impl GroupSpec {
    pub fn new(field: &FiniteField, n: FqPoly, v: Option<FqPoly>, r: u32, flavor: Flavor) -> Result<Self> {
        if n.is_zero() || !n.is_monic() {
            return Err(Error::InvalidGroup("n must be monic and nonzero".into()));
        }
        let v = if r == 0 && flavor != Flavor::Gamma0vRCapGammaN { None } else { v };
        if let Some(v) = &v {
            if !v.is_monic() || !v.is_irreducible() {
                return Err(Error::InvalidGroup(format!("v = {v} must be monic irreducible")));
            }
            if !n.gcd(v).is_one() {
                return Err(Error::InvalidGroup("gcd(n, v) must be 1".into()));
            }
        }
        match flavor {
            Flavor::GammaN if r > 0 || v.is_some() => {
                return Err(Error::InvalidGroup("GammaN takes no v-part".into()))
            }
            Flavor::Gamma0vRCapGammaN if v.is_none() => {
                return Err(Error::InvalidGroup("Gamma0vR_cap_GammaN needs v".into()))
            }
            _ => {}
        }
        if r > 0 && v.is_none() {
            return Err(Error::InvalidGroup("r > 0 needs v".into()));
        }
        let mut spec = GroupSpec {
            field: field.clone(),
            n,
            v,
            r,
            flavor,
            borel: Vec::new(),
        };
        let m = match flavor {
            Flavor::GammaN => FqPoly::one(field),
            Flavor::Gamma0vRCapGammaN => spec.v_power(),
            Flavor::Gamma0Only => spec.modulus(),
        };
        if !m.is_one() {
            spec.borel = m.factor().into_iter().map(|(p, e)| (p.clone(), p.pow(e))).collect();
        }
        Ok(spec)
    }

    /// `Gamma(n)`.
    pub fn gamma(n: FqPoly) -> Result<Self> {
        let f = n.field().clone();
        Self::new(&f, n, None, 0, Flavor::GammaN)
    }

    /// `Gamma_0(v^r) ∩ Gamma(n)`.
    pub fn gamma0_cap_gamma(n: FqPoly, v: FqPoly, r: u32) -> Result<Self> {
        let f = n.field().clone();
        Self::new(&f, n, Some(v), r, Flavor::Gamma0vRCapGammaN)
    }

    /// `Gamma_0(n)`.
    pub fn gamma0(n: FqPoly) -> Result<Self> {
        let f = n.field().clone();
        Self::new(&f, n, None, 0, Flavor::Gamma0Only)
    }

    /// `SL(2, A)` itself.
    pub fn full(field: &FiniteField) -> Self {
        Self::new(field, FqPoly::one(field), None, 0, Flavor::GammaN).expect("valid")
    }

    pub fn from_json(j: &GroupSpecJson) -> Result<Self> {
        let field = FiniteField::new(j.q)?;
        let n = FqPoly::parse(&field, &j.n)?;
        let v = j.v.as_deref().map(|s| FqPoly::parse(&field, s)).transpose()?;
        Self::new(&field, n, v, j.r, j.flavor)
    }

    pub fn to_json(&self) -> GroupSpecJson {
        GroupSpecJson {
            q: self.field.order(),
            n: self.n.to_text(),
            v: self.v.as_ref().map(|v| v.to_text()),
            r: self.r,
            flavor: self.flavor,
        }
    }

    pub fn describe(&self) -> String {
        let n = self.n.to_text();
        match (self.flavor, &self.v) {
            (Flavor::GammaN, _) => format!("Gamma({n}) over F_{}", self.field.order()),
            (Flavor::Gamma0vRCapGammaN, Some(v)) => format!(
                "Gamma0(({})^{}) cap Gamma({n}) over F_{}",
                v.to_text(),
                self.r,
                self.field.order()
            ),
            (Flavor::Gamma0Only, Some(v)) => format!(
                "Gamma0({n} * ({})^{}) over F_{}",
                v.to_text(),
                self.r,
                self.field.order()
            ),
            (_, None) => format!("Gamma0({n}) over F_{}", self.field.order()),
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn n(&self) -> &FqPoly {
        &self.n
    }

    pub fn v(&self) -> Option<&FqPoly> {
        self.v.as_ref()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn v_power(&self) -> FqPoly {
        match &self.v {
            Some(v) => v.pow(self.r),
            None => FqPoly::one(&self.field),
        }
    }

    /// Modulus `N` with `Gamma(N) ⊆ Gamma`.
    pub fn modulus(&self) -> FqPoly {
        &self.n * &self.v_power()
    }

    /// Part of the modulus where the full congruence condition applies.
    pub fn full_part(&self) -> FqPoly {
        match self.flavor {
            Flavor::Gamma0Only => FqPoly::one(&self.field),
            _ => self.n.clone(),
        }
    }

    /// Prime-power moduli where only `c ≡ 0` is imposed.
    pub fn borel_parts(&self) -> Vec<FqPoly> {
        self.borel.iter().map(|(_, m)| m.clone()).collect()
    }

    /// Whether `-I` lies in the group.
    pub fn contains_minus_identity(&self) -> bool {
        self.field.characteristic() == 2 || self.full_part().is_one()
    }

    /// `|Gamma ∩ {±I}|`
    pub fn center_order(&self) -> u64 {
        if self.field.characteristic() == 2 {
            1
        } else if self.contains_minus_identity() {
            2
        } else {
            1
        }
    }

    /// Same group with the extra condition `c ≡ 0 mod w^s`, `w` coprime to
    /// the level. Used for degeneracy maps and Hecke coset representatives.
    pub fn with_gamma0(&self, w: &FqPoly, s: u32) -> Result<Self> {
        if !self.modulus().gcd(w).is_one() {
            return Err(Error::IncompatibleLevels(format!(
                "{} is not coprime to the level",
                w.to_text()
            )));
        }
        match self.flavor {
            Flavor::GammaN => Self::new(&self.field, self.n.clone(), Some(w.clone()), s, Flavor::Gamma0vRCapGammaN),
            Flavor::Gamma0Only if self.v.is_none() => {
                Self::new(&self.field, self.n.clone(), Some(w.clone()), s, Flavor::Gamma0Only)
            }
            _ => Err(Error::IncompatibleLevels(
                "level already carries a v-part".into(),
            )),
        }
    }

    pub fn contains(&self, g: &PolyMat2) -> bool {
        if !g.is_sl2a() {
            return false;
        }
        let n = self.full_part();
        if !n.is_one()
            && !g.reduce(&n).is_identity() {
                return false;
            }
        self.borel.iter().all(|(_, m)| m.divides(&g.c))
    }

    /// `[SL(2, A) : Gamma]`.
    pub fn index_in_sl2(&self) -> u64 {
        let mut idx = 1u64;
        let full = self.full_part();
        if !full.is_one() {
            for (p, e) in full.factor() {
                let qp = self.field.order().pow(p.degree().unwrap() as u32);
                idx *= qp.pow(3 * (e - 1)) * qp * (qp * qp - 1);
            }
        }
        for (p, m) in &self.borel {
            let e = (m.degree().unwrap() / p.degree().unwrap()) as u32;
            let qp = self.field.order().pow(p.degree().unwrap() as u32);
            idx *= qp.pow(e - 1) * (qp + 1);
        }
        idx
    }

    /// Invariant of the right coset `Gamma g`: `g mod n` on the full part and
    /// the normalized bottom row in `P^1(A/m)` for each Borel modulus.
    pub fn coset_key(&self, g: &PolyMat2) -> CosetKey {
        let mut key = Vec::new();
        let n = self.full_part();
        if !n.is_one() {
            let r = g.reduce(&n);
            key.extend([r.a, r.b, r.c, r.d]);
        }
        for (p, m) in &self.borel {
            let (c, d) = (g.c.rem(m), g.d.rem(m));
            if !d.rem(p).is_zero() {
                let inv = d.inv_mod(m).expect("unit");
                key.push(c.mul_mod(&inv, m));
                key.push(FqPoly::one(&self.field));
            } else {
                let inv = c.inv_mod(m).expect("primitive row");
                key.push(FqPoly::zero(&self.field));
                key.push(d.mul_mod(&inv, m));
            }
        }
        CosetKey(key)
    }

    /// The Atkin–Lehner element at `v`.
    ///
    /// For `Gamma_0(v^r) ∩ Gamma(n)` this is `S diag(v^r, 1) = [[0, 1], [-v^r, 0]]`.
    /// For `Gamma_0(M v^r)` it is `[[v^r, -b], [M v^r, a v^r]]` with
    /// `a v^r + b M = 1`. Both have determinant `v^r`, normalize the group and
    /// square to `v^r` times a group element.
    pub fn atkin_lehner(&self) -> Result<PolyMat2> {
        let Some(_) = &self.v else {
            return Err(Error::Precondition("Atkin-Lehner needs r >= 1".into()));
        };
        if self.r == 0 {
            return Err(Error::Precondition("Atkin-Lehner needs r >= 1".into()));
        }
        let vr = self.v_power();
        let f = &self.field;
        match self.flavor {
            Flavor::Gamma0vRCapGammaN => Ok(PolyMat2::new(
                FqPoly::zero(f),
                FqPoly::one(f),
                -&vr,
                FqPoly::zero(f),
            )),
            Flavor::Gamma0Only => {
                let m = self.n.clone();
                let (g, a, b) = vr.xgcd(&m);
                debug_assert!(g.is_one());
                Ok(PolyMat2::new(vr.clone(), -&b, &m * &vr, &a * &vr))
            }
            Flavor::GammaN => Err(Error::Precondition("GammaN has no v-part".into())),
        }
    }
}

/// Right-coset invariant; equal keys iff equal cosets `Gamma g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetKey(pub Vec<FqPoly>);

/// A vertex or oriented edge of the tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeObject {
    Vertex(TreeVertex),
    Edge(OrientedEdge),
}

impl TreeObject {
    fn anchor(&self) -> &TreeVertex {
        match self {
            TreeObject::Vertex(v) => v,
            TreeObject::Edge(e) => &e.origin,
        }
    }

    fn act(&self, g: &PolyMat2) -> TreeObject {
        match self {
            TreeObject::Vertex(v) => TreeObject::Vertex(v.act(g)),
            TreeObject::Edge(e) => TreeObject::Edge(e.act(g)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EquivalenceResult {
    /// Least witness in the enumeration order, if any.
    pub witness: Option<PolyMat2>,
    /// Bound actually used.
    pub bound: usize,
    /// Certified bound; a missing witness proves inequivalence iff
    /// `bound >= certified`.
    pub certified: usize,
}

/// Degree bound certified for any `gamma` in `SL(2, A)` with `gamma g1 = g2`.
///
/// For `gamma` of determinant one with largest entry degree `D`, the Cartan
/// decomposition gives `d(o, gamma o) = 2D`. Since `gamma` is an isometry,
/// `d(o, gamma o) <= d(o, g2) + d(g2, gamma o) = d(o, g2) + d(g1, o)`, so
/// `D <= (d(o, g1) + d(o, g2)) / 2`. Edges use their origins.
pub fn certified_bound(g1: &TreeObject, g2: &TreeObject) -> usize {
    let o = TreeVertex::origin(g1.anchor().field());
    let total = o.distance(g1.anchor()) + o.distance(g2.anchor());
    (total / 2) as usize
}

/// Enumerates `gamma` in the group with entry degrees `<= deg_bound` and
/// `gamma g1 = g2`, in the order (first column, then the free parameter of
/// the second column) by polynomial code. Stops at the first hit unless
/// `all` is set.
fn search(spec: &GroupSpec, g1: &TreeObject, g2: &TreeObject, deg_bound: usize, all: bool) -> Vec<PolyMat2> {
    let f = spec.field();
    let polys = FqPoly::all_below_degree(f, deg_bound + 1);
    let full = spec.full_part();
    let borel: FqPoly = spec
        .borel_parts()
        .iter()
        .fold(FqPoly::one(f), |acc, m| &acc * m);
    let mut out = Vec::new();
    for a in &polys {
        if !full.is_one() && !(&a.rem(&full) - &FqPoly::one(f)).rem(&full).is_zero() {
            continue;
        }
        for c in &polys {
            if a.is_zero() && c.is_zero() {
                continue;
            }
            if !full.is_one() && !full.divides(c) {
                continue;
            }
            if !borel.divides(c) {
                continue;
            }
            let (g, s, t) = a.xgcd(c);
            if !g.is_one() {
                continue;
            }
            // a d - b c = 1 with d = s + k c, b = -t + k a
            let (b0, d0) = (-&t, s);
            let pivot = if a.is_zero() { c } else { a };
            let base = if a.is_zero() { &d0 } else { &b0 };
            let kdeg = (deg_bound as i64).max(base.deg_i64()) - pivot.deg_i64();
            if kdeg < 0 {
                continue;
            }
            for k in FqPoly::all_below_degree(f, kdeg as usize + 1) {
                let b = &b0 + &(&k * a);
                let d = &d0 + &(&k * c);
                if b.deg_i64() > deg_bound as i64 || d.deg_i64() > deg_bound as i64 {
                    continue;
                }
                let gamma = PolyMat2::new(a.clone(), b, c.clone(), d);
                if !spec.contains(&gamma) {
                    continue;
                }
                if &g1.act(&gamma) == g2 {
                    out.push(gamma);
                    if !all {
                        return out;
                    }
                }
            }
        }
    }
    out
}

/// Finds `gamma` in the group with `gamma g1 = g2` and entry degrees at most
/// `deg_bound` (or the certified bound when `None`).
pub fn equivalence_search(
    spec: &GroupSpec,
    g1: &TreeObject,
    g2: &TreeObject,
    deg_bound: Option<usize>,
) -> EquivalenceResult {
    let certified = certified_bound(g1, g2);
    let bound = deg_bound.unwrap_or(certified);
    let witness = if g1 == g2 {
        Some(PolyMat2::identity(spec.field()))
    } else {
        search(spec, g1, g2, bound, false).into_iter().next()
    };
    EquivalenceResult {
        witness,
        bound,
        certified,
    }
}

/// All elements of the group fixing `g` (a finite set), by the certified
/// enumeration.
pub fn stabilizer_elements(spec: &GroupSpec, g: &TreeObject) -> Vec<PolyMat2> {
    let bound = certified_bound(g, g);
    search(spec, g, g, bound, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FiniteField {
        FiniteField::new(2).unwrap()
    }

    fn p(f: &FiniteField, s: &str) -> FqPoly {
        FqPoly::parse(f, s).unwrap()
    }

    #[test]
    fn membership_examples() {
        let f = f2();
        let t = p(&f, "0,1");
        let g0 = GroupSpec::gamma0(t.clone()).unwrap();
        let one = FqPoly::one(&f);
        assert!(g0.contains(&PolyMat2::upper(one.clone())));
        assert!(!g0.contains(&PolyMat2::lower(one.clone())));
        let g = GroupSpec::gamma(t.clone()).unwrap();
        assert!(g.contains(&PolyMat2::upper(t.clone())));
        assert!(!g.contains(&PolyMat2::upper(one)));
    }

    #[test]
    fn index_examples() {
        let f = f2();
        let t = p(&f, "0,1");
        assert_eq!(GroupSpec::gamma0(t.clone()).unwrap().index_in_sl2(), 3);
        assert_eq!(GroupSpec::gamma(t.clone()).unwrap().index_in_sl2(), 6);
        assert_eq!(GroupSpec::full(&f).index_in_sl2(), 1);
        let v = p(&f, "1,1,0,1");
        assert_eq!(GroupSpec::gamma0_cap_gamma(t, v, 1).unwrap().index_in_sl2(), 54);
    }

    #[test]
    fn json_round_trip() {
        let j = r#"{"q":2,"n":"0,1","v":"1,1,0,1","r":1,"flavor":"Gamma0vR_cap_GammaN"}"#;
        let parsed: GroupSpecJson = serde_json::from_str(j).unwrap();
        let spec = GroupSpec::from_json(&parsed).unwrap();
        assert_eq!(spec.to_json(), parsed);
        assert!(GroupSpec::from_json(&GroupSpecJson {
            q: 2,
            n: "0,1".into(),
            v: Some("0,1".into()),
            r: 1,
            flavor: Flavor::Gamma0vRCapGammaN
        })
        .is_err());
    }

    #[test]
    fn atkin_lehner_normalizes() {
        let f = FiniteField::new(3).unwrap();
        let n = p(&f, "0,1");
        let v = p(&f, "1,1");
        let spec = GroupSpec::gamma0_cap_gamma(n, v, 1).unwrap();
        let w = spec.atkin_lehner().unwrap();
        let winv_scaled = w.adjugate();
        let det = w.det();
        // W gamma adj(W) / det(W) for a few generators of the group
        let gens = [
            PolyMat2::upper(p(&f, "0,1")),
            PolyMat2::lower(p(&f, "0,1,1")),
            PolyMat2::upper(p(&f, "0,2,0,1")),
        ];
        for g in gens {
            assert!(spec.contains(&g));
            let c = w.mul(&g).mul(&winv_scaled);
            let q = |x: &FqPoly| {
                let (q, r) = x.div_rem(&det);
                assert!(r.is_zero());
                q
            };
            let conj = PolyMat2::new(q(&c.a), q(&c.b), q(&c.c), q(&c.d));
            assert!(spec.contains(&conj));
        }
    }

    #[test]
    fn equivalence_examples() {
        let f = f2();
        let full = GroupSpec::full(&f);
        let o = TreeObject::Vertex(TreeVertex::new(1, FqPoly::zero(&f)));
        let res = equivalence_search(&full, &o, &o, None);
        assert!(res.witness.unwrap().is_identity());
        let g2 = TreeObject::Vertex(TreeVertex::new(1, FqPoly::one(&f)));
        let res = equivalence_search(&full, &o, &g2, None);
        let w = res.witness.unwrap();
        assert_eq!(o.act(&w), g2);
        // stabilizer of the origin is SL(2, F_2), order 6
        let st = stabilizer_elements(&full, &TreeObject::Vertex(TreeVertex::origin(&f)));
        assert_eq!(st.len(), 6);
    }
}
