//! Ihara-type injectivity, the congruence module between old and new forms,
//! and level raising, all at the level of cochain lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::field::{FiniteField, FqElem};
use crate::arith::fqmat::FqMatrix;
use crate::arith::fqpoly::FqPoly;
use crate::arith::integer::{prime_divisors, primes_up_to};
use crate::arith::intpoly::IntPoly;
use crate::arith::matrix::{IntMatrix, IntMatrixJson, RatMatrix};
use crate::cochains::s_gamma;
use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::hecke::{
    char_poly_of, degeneracy_maps, hecke_matrix, old_new_split, raised_spec, restrict, Degeneracy,
    Level, OldNew,
};

pub(crate) fn ser_bigs<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub(crate) fn ser_big<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// The two levels `Gamma` and `Gamma ∩ Gamma_0(v)` with the maps between
/// them and `T_v` on the small level.
pub struct Raising {
    pub v: FqPoly,
    pub q: u64,
    pub q_v: u64,
    pub small: Level,
    pub big: Level,
    pub maps: Degeneracy,
    pub t_v: IntMatrix,
    pub split: OldNew,
}

impl Raising {
    pub fn build(spec: &GroupSpec, v: &FqPoly) -> Result<Self> {
        let f = spec.field();
        let q = f.order();
        let dv = v
            .degree()
            .ok_or_else(|| Error::Precondition("v = 0".into()))?;
        let q_v = q.pow(dv as u32);
        let small = Level::build(spec, false)?;
        let (big_spec, _) = raised_spec(spec, v)?;
        let big = Level::build(&big_spec, false)?;
        let t_v = hecke_matrix(&small, v)?.to_int()?;
        let maps = degeneracy_maps(&small, &big)?;
        let split = old_new_split(&big, &maps)?;
        Ok(Raising {
            v: v.clone(),
            q,
            q_v,
            small,
            big,
            maps,
            t_v,
            split,
        })
    }

    /// Divisors of `2 q (q_v + 1)`.
    pub fn excluded_primes(&self) -> Vec<BigInt> {
        prime_divisors(&BigInt::from(2 * self.q * (self.q_v + 1)))
    }

    pub fn s_gamma_small(&self) -> Result<Vec<BigInt>> {
        s_gamma(&self.small.lattice, &self.small.gram)
    }

    pub fn s_gamma_big(&self) -> Result<Vec<BigInt>> {
        s_gamma(&self.big.lattice, &self.big.gram)
    }

    /// `(V | w V)` as an integer matrix (`g(vn)` rows, `2 g(n)` columns).
    pub fn ihara_map(&self) -> Result<IntMatrix> {
        self.maps
            .v_plain
            .matrix
            .hstack(&self.maps.v_twisted.matrix)
            .to_int()
            .ok_or_else(|| Error::Weighted("degeneracy maps are not integral".into()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModLRank {
    pub l: u64,
    pub rank: usize,
    /// Whether `l` divides some elementary divisor.
    pub divides_snf: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IharaReport {
    pub level: String,
    pub v: String,
    pub g_n: usize,
    pub g_vn: usize,
    pub map: IntMatrixJson,
    #[serde(serialize_with = "ser_bigs")]
    pub snf_diagonal: Vec<BigInt>,
    pub rank: usize,
    pub rationally_injective: bool,
    #[serde(serialize_with = "ser_bigs")]
    pub torsion_primes: Vec<BigInt>,
    /// Index of the image in its saturation.
    #[serde(serialize_with = "ser_big")]
    pub saturation_index: BigInt,
    #[serde(serialize_with = "ser_bigs")]
    pub excluded_primes: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigs")]
    pub s_gamma_n: Vec<BigInt>,
    /// Torsion primes outside `excluded ∪ S_Gamma(n)`.
    #[serde(serialize_with = "ser_bigs")]
    pub violations: Vec<BigInt>,
    pub mod_l_ranks: Vec<ModLRank>,
    /// Mod-l ranks agree with the elementary divisors for every `l <= 50`.
    pub mod_l_consistent: bool,
}

pub fn ihara_check(r: &Raising) -> Result<IharaReport> {
    let map = r.ihara_map()?;
    let g_n = r.small.genus();
    let snf = map.smith_normal_form();
    let diag = snf.diag.clone();
    let rank = snf.rank();
    let nonzero: Vec<BigInt> = diag.iter().filter(|d| !d.is_zero()).cloned().collect();
    let saturation_index = nonzero.iter().fold(BigInt::one(), |a, d| a * d.abs());
    let mut torsion: Vec<BigInt> = nonzero.iter().flat_map(prime_divisors).collect();
    torsion.sort();
    torsion.dedup();
    let excluded = r.excluded_primes();
    let s_n = r.s_gamma_small()?;
    let violations: Vec<BigInt> = torsion
        .iter()
        .filter(|p| !excluded.contains(p) && !s_n.contains(p))
        .cloned()
        .collect();
    let mut mod_l = Vec::new();
    let mut consistent = true;
    for l in primes_up_to(50) {
        let f = FiniteField::new(l)?;
        let rk = FqMatrix::from_int(&f, &map).rank();
        let divides = nonzero.iter().any(|d| (d % l).is_zero());
        let expected = nonzero.len() - nonzero.iter().filter(|d| (*d % l).is_zero()).count();
        consistent &= rk == expected;
        mod_l.push(ModLRank {
            l,
            rank: rk,
            divides_snf: divides,
        });
    }
    Ok(IharaReport {
        level: r.small.spec().describe(),
        v: r.v.to_text(),
        g_n,
        g_vn: r.big.genus(),
        map: (&map).into(),
        snf_diagonal: diag,
        rank,
        rationally_injective: rank == 2 * g_n,
        torsion_primes: torsion,
        saturation_index,
        excluded_primes: excluded,
        s_gamma_n: s_n,
        violations,
        mod_l_ranks: mod_l,
        mod_l_consistent: consistent,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceModule {
    /// `beta' beta` computed with `beta'` the Gram adjoint of `beta`.
    pub beta_prime_beta: IntMatrixJson,
    /// Equal to `[[(q_v+1) I, T_v], [T_v, (q_v+1) I]]`.
    pub matches_block_model: bool,
    #[serde(serialize_with = "ser_bigs")]
    pub snf_diagonal: Vec<BigInt>,
    /// `W_v = V I w - w` restricted to the old space equals
    /// `[[T_v, q_v], [-1, 0]]`.
    pub w_matches_model: bool,
    /// `W_v^2 - 1 = [[-1, T_v], [0, -1]] beta' beta`.
    pub identity_holds: bool,
    #[serde(serialize_with = "ser_big")]
    pub det: BigInt,
    /// `prod_i Res(h_i, x^2 - (q_v+1)^2)^{e_i}` over the factorization of
    /// the characteristic polynomial of `T_v`.
    #[serde(serialize_with = "ser_big")]
    pub resultant_product: BigInt,
    pub det_matches: bool,
}

fn blocks(a: &RatMatrix, b: &RatMatrix, c: &RatMatrix, d: &RatMatrix) -> RatMatrix {
    RatMatrix::block(&[vec![a, b], vec![c, d]])
}

fn int_block(a: &IntMatrix, b: &IntMatrix, c: &IntMatrix, d: &IntMatrix) -> IntMatrix {
    IntMatrix::block(&[vec![a, b], vec![c, d]])
}

/// `x^2 - (q_v + 1)^2`.
pub fn eisenstein_poly(q_v: u64) -> IntPoly {
    let a = BigInt::from(q_v + 1);
    IntPoly::new(vec![-(&a * &a), BigInt::zero(), BigInt::one()])
}

pub fn congruence_module(r: &Raising) -> Result<CongruenceModule> {
    let g = r.small.genus();
    let a = BigInt::from(r.q_v + 1);
    let beta = r.maps.v_plain.matrix.hstack(&r.maps.v_twisted.matrix);
    let gs = &r.small.gram.entries;
    let g2 = blocks(gs, &RatMatrix::zeros(g, g), &RatMatrix::zeros(g, g), gs);
    let bb = &(&g2.inverse()? * &beta.transpose()) * &(&r.big.gram.entries * &beta);
    let bb_int = bb
        .to_int()
        .ok_or_else(|| Error::SolveFailed("beta' beta is not integral".into()))?;
    let id = IntMatrix::identity(g);
    let ai = id.scale(&a);
    let model = int_block(&ai, &r.t_v, &r.t_v, &ai);
    let snf = bb_int.smith_normal_form();

    // W_v = V I w - w on the big level
    let w = &r.maps.w_big.matrix;
    let big_w = &(&(&r.maps.v_plain.matrix * &r.maps.i_plain.matrix) * w) - w;
    let w_old = restrict(&big_w, &beta)?;
    let t_rat = r.t_v.to_rat();
    let qv = RatMatrix::identity(g).scale(&BigRational::from_integer(BigInt::from(r.q_v)));
    let w_model = blocks(&t_rat, &qv, &(-&RatMatrix::identity(g)), &RatMatrix::zeros(g, g));
    let lhs = &(&w_old * &w_old) - &RatMatrix::identity(2 * g);
    let left = blocks(
        &(-&RatMatrix::identity(g)),
        &t_rat,
        &RatMatrix::zeros(g, g),
        &(-&RatMatrix::identity(g)),
    );
    let identity_holds = lhs == &left * &bb;

    let det = if g == 0 { BigInt::one() } else { bb_int.det()? };
    let cp = char_poly_of(&r.t_v)?;
    let e = eisenstein_poly(r.q_v);
    let resultant_product = if g == 0 {
        BigInt::one()
    } else {
        let (_, fac) = cp.factor();
        fac.iter()
            .fold(BigInt::one(), |acc, (h, m)| acc * h.resultant(&e).pow(*m))
    };
    Ok(CongruenceModule {
        beta_prime_beta: (&bb_int).into(),
        matches_block_model: bb_int == model,
        snf_diagonal: snf.diag,
        w_matches_model: w_old == w_model,
        identity_holds,
        det_matches: det.abs() == resultant_product.abs(),
        det,
        resultant_product,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeLabel {
    pub l: String,
    /// `"theorem-covered"` or the reason it falls outside the hypotheses.
    pub status: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    pub factor: String,
    pub multiplicity: u32,
    #[serde(serialize_with = "ser_big")]
    pub resultant: BigInt,
    pub eisenstein_degenerate: bool,
    pub primes: Vec<PrimeLabel>,
    /// For a rational eigenvalue `t`: `(r^2-1)(s^2-1) = -(t^2-(q_v+1)^2)`
    /// with `r + s = t`, `r s = q_v`.
    pub rational_identity: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceReport {
    pub level: String,
    pub v: String,
    pub q_v: u64,
    pub char_poly: String,
    #[serde(serialize_with = "ser_bigs")]
    pub s_gamma_n: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigs")]
    pub s_gamma_vn: Vec<BigInt>,
    pub factors: Vec<FactorReport>,
}

impl CongruenceReport {
    /// Primes labelled theorem-covered, ascending, without repetition.
    pub fn candidates(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .factors
            .iter()
            .flat_map(|f| f.primes.iter())
            .filter(|p| p.status == "theorem-covered")
            .filter_map(|p| p.l.parse().ok())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Every prime dividing some resultant, ascending.
    pub fn all_primes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .factors
            .iter()
            .flat_map(|f| f.primes.iter())
            .filter_map(|p| p.l.parse().ok())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

pub fn level_raising_primes(r: &Raising) -> Result<CongruenceReport> {
    let cp = char_poly_of(&r.t_v)?;
    let e = eisenstein_poly(r.q_v);
    let excluded = r.excluded_primes();
    let s_n = r.s_gamma_small()?;
    let s_vn = r.s_gamma_big()?;
    let mut factors = Vec::new();
    if r.small.genus() > 0 {
        let (_, fac) = cp.factor();
        for (h, m) in fac {
            let res = h.resultant(&e);
            let degenerate = res.is_zero();
            let primes = if degenerate {
                vec![PrimeLabel {
                    l: "all".into(),
                    status: "Eisenstein-degenerate".into(),
                }]
            } else {
                prime_divisors(&res)
                    .into_iter()
                    .map(|p| {
                        let status = if excluded.contains(&p) {
                            "outside hypotheses: divides 2q(q_v+1)".to_string()
                        } else if s_n.contains(&p) {
                            "outside hypotheses: in S_Gamma(n)".to_string()
                        } else {
                            "theorem-covered".to_string()
                        };
                        PrimeLabel {
                            l: p.to_string(),
                            status,
                        }
                    })
                    .collect()
            };
            let rational_identity = if h.degree() == Some(1) {
                // h = x - t
                let t = -h.coeff(0);
                let q = BigInt::from(r.q_v);
                let a = BigInt::from(r.q_v + 1);
                // (r^2-1)(s^2-1) = (rs)^2 - ((r+s)^2 - 2rs) + 1
                let lhs = &q * &q - (&t * &t - BigInt::from(2) * &q) + 1;
                Some(lhs == -(&t * &t - &a * &a))
            } else {
                None
            };
            factors.push(FactorReport {
                factor: h.to_string(),
                multiplicity: m,
                resultant: res,
                eisenstein_degenerate: degenerate,
                primes,
                rational_identity,
            });
        }
    }
    Ok(CongruenceReport {
        level: r.small.spec().describe(),
        v: r.v.to_text(),
        q_v: r.q_v,
        char_poly: cp.to_string(),
        s_gamma_n: s_n,
        s_gamma_vn: s_vn,
        factors,
    })
}

/// Irreducibles of degree `<= max_deg` coprime to `avoid`.
pub fn default_probes(field: &FiniteField, max_deg: usize, avoid: &FqPoly) -> Vec<FqPoly> {
    (1..=max_deg)
        .flat_map(|d| FqPoly::monic_irreducibles_of_degree(field, d))
        .filter(|p| avoid.gcd(p).is_one())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub l: u64,
    /// The eigenvalues live in `GF(l^k)`.
    pub extension_degree: u32,
    pub probes: Vec<String>,
    /// Residual old eigensystems with `T_v = ±(q_v+1)`.
    pub old_systems: usize,
    pub new_rank: usize,
    pub verified: bool,
    /// The matched system `(w, a_w)` with `a_w` as a field element code.
    pub matched: Option<Vec<(String, u64)>>,
}

fn lcm_degrees(p: &IntPoly, l: u64) -> Result<u32> {
    Ok(p.factor_mod(l)?
        .iter()
        .map(|(f, _)| f.degree().unwrap_or(1) as u32)
        .fold(1, |a, d| a.lcm(&d)))
}

fn roots_in(field: &FiniteField, p: &IntPoly) -> Vec<FqElem> {
    let fp = p.to_fp(field);
    if fp.is_zero() {
        return field.elements().collect();
    }
    fp.factor()
        .into_iter()
        .filter(|(f, _)| f.degree() == Some(1))
        .map(|(f, _)| field.neg(f.coeff(0)))
        .collect()
}

/// Columns of `basis` spanning `basis ∩ ker(m - a)`.
fn eigen_restrict(m: &FqMatrix, a: FqElem, basis: &FqMatrix) -> FqMatrix {
    let k = m.sub_scalar(a).mul(basis).kernel();
    basis.mul(&k)
}

/// Looks for a common eigensystem mod `l` of the probe operators between
/// the old forms with `T_v = ±(q_v+1)` and the new lattice.
pub fn verify_congruence(r: &Raising, l: u64, probes: &[FqPoly]) -> Result<Verification> {
    let probe_names: Vec<String> = probes.iter().map(|p| p.to_text()).collect();
    let new_rank = r.split.new.cols();
    let nothing = |k| Verification {
        l,
        extension_degree: k,
        probes: probe_names.clone(),
        old_systems: 0,
        new_rank,
        verified: false,
        matched: None,
    };
    if new_rank == 0 || r.small.genus() == 0 {
        return Ok(nothing(1));
    }
    let modulus = &r.small.spec().modulus() * &r.v;
    let mut small_ops = Vec::new();
    let mut new_ops = Vec::new();
    for w in probes {
        if !modulus.gcd(w).is_one() {
            return Err(Error::Precondition(format!(
                "probe {} is not coprime to the level",
                w.to_text()
            )));
        }
        small_ops.push(hecke_matrix(&r.small, w)?.to_int()?);
        let tb = hecke_matrix(&r.big, w)?.matrix;
        let x = restrict(&tb, &r.split.new.to_rat())?;
        new_ops.push(
            x.to_int()
                .ok_or_else(|| Error::SolveFailed("probe operator not integral on new lattice".into()))?,
        );
    }
    let mut k = lcm_degrees(&char_poly_of(&r.t_v)?, l)?;
    for t in &small_ops {
        k = k.lcm(&lcm_degrees(&char_poly_of(t)?, l)?);
    }
    if (l as f64).powi(k as i32) > 1.0e6 {
        return Err(Error::Precondition(format!(
            "eigenvalues need GF({l}^{k}), too large"
        )));
    }
    let field = FiniteField::new(l.pow(k))?;
    let g = r.small.genus();
    let tv = FqMatrix::from_int(&field, &r.t_v);
    let a = field.from_int(r.q_v as i64 + 1);
    let mut systems: Vec<(FqMatrix, Vec<FqElem>)> = Vec::new();
    let mut eps = vec![a];
    if field.neg(a) != a {
        eps.push(field.neg(a));
    }
    for e in eps {
        let kb = eigen_restrict(&tv, e, &FqMatrix::identity(&field, g));
        if kb.cols() > 0 {
            systems.push((kb, Vec::new()));
        }
    }
    for t in &small_ops {
        let m = FqMatrix::from_int(&field, t);
        let roots = roots_in(&field, &char_poly_of(t)?);
        let mut next = Vec::new();
        for (basis, tuple) in systems {
            for &alpha in &roots {
                let kb = eigen_restrict(&m, alpha, &basis);
                if kb.cols() > 0 {
                    let mut t2 = tuple.clone();
                    t2.push(alpha);
                    next.push((kb, t2));
                }
            }
        }
        systems = next;
    }
    let new_mats: Vec<FqMatrix> = new_ops.iter().map(|x| FqMatrix::from_int(&field, x)).collect();
    let mut matched = None;
    for (_, tuple) in &systems {
        let mut basis = FqMatrix::identity(&field, new_rank);
        for (m, &alpha) in new_mats.iter().zip(tuple) {
            basis = eigen_restrict(m, alpha, &basis);
            if basis.cols() == 0 {
                break;
            }
        }
        if basis.cols() > 0 {
            matched = Some(
                probe_names
                    .iter()
                    .cloned()
                    .zip(tuple.iter().map(|x| x.0))
                    .collect(),
            );
            break;
        }
    }
    Ok(Verification {
        l,
        extension_degree: k,
        probes: probe_names,
        old_systems: systems.len(),
        new_rank,
        verified: matched.is_some(),
        matched,
    })
}

/// Rank of an integer matrix modulo a prime.
pub fn rank_mod(m: &IntMatrix, l: u64) -> Result<usize> {
    Ok(FqMatrix::from_int(&FiniteField::new(l)?, m).rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_models() {
        // det [[q+1, t], [t, q+1]] = (q+1)^2 - t^2
        let m = IntMatrix::from_i64_rows(&[vec![3, 1], vec![1, 3]]);
        assert_eq!(m.det().unwrap(), BigInt::from(8));
        let snf = m.smith_normal_form();
        assert_eq!(snf.diag, vec![BigInt::from(1), BigInt::from(8)]);
        // t = 2, q_v = 4: t^2 - 25 = -21
        let h = IntPoly::from_i64(&[-2, 1]);
        let res = h.resultant(&eisenstein_poly(4));
        assert_eq!(res, BigInt::from(-21));
        assert_eq!(prime_divisors(&res), vec![BigInt::from(3), BigInt::from(7)]);
        // t = q_v + 1 is degenerate
        assert!(IntPoly::from_i64(&[-5, 1]).resultant(&eisenstein_poly(4)).is_zero());
    }
}
