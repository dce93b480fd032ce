//! The tower `L_k = Gamma_0(v^(r+k)) ∩ Gamma(n)`, `k = 0, 1, 2`: the
//! sequence `zeta_1`, `zeta_2`, the three degeneracy maps and the action of
//! `mu' mu`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::arith::field::FiniteField;
use crate::arith::fqmat::FqMatrix;
use crate::arith::fqpoly::FqPoly;
use crate::arith::integer::{prime_divisors, primes_up_to};
use crate::arith::matrix::{IntMatrix, IntMatrixJson, RatMatrix};
use crate::cochains::s_gamma;
use crate::congruence::ser_bigs;
use crate::error::{Error, Result};
use crate::groups::{Flavor, GroupSpec};
use crate::hecke::{assemble, atkin_lehner, pullback, pushforward, Level};
use crate::tree::PolyMat2;

/// Cochain maps along the tower.
pub struct Tower {
    pub v: FqPoly,
    pub r: u32,
    pub q: u64,
    pub q_v: u64,
    pub levels: [Level; 3],
    /// `pi_0^*: H(L0) -> H(L1)` and `pi_00^*: H(L1) -> H(L2)`.
    pub pi0_up: RatMatrix,
    pub pi00_up: RatMatrix,
    /// `pi_0*` and `pi_00*`, the traces.
    pub pi0_down: RatMatrix,
    pub pi00_down: RatMatrix,
    /// The involutions `w_0`, `w_1`, `w_2`; for `r = 0`, `w_0` is the action
    /// of `[[0, 1], [-1, 0]]`.
    pub w: [RatMatrix; 3],
}

fn int(m: &RatMatrix, what: &str) -> Result<IntMatrix> {
    m.to_int()
        .ok_or_else(|| Error::SolveFailed(format!("{what} is not integral")))
}

impl Tower {
    pub fn build(n: &FqPoly, v: &FqPoly, r: u32) -> Result<Self> {
        let f = n.field().clone();
        if !v.is_irreducible() || !v.is_monic() {
            return Err(Error::Precondition(format!(
                "{} is not a monic irreducible",
                v.to_text()
            )));
        }
        if !n.gcd(v).is_one() {
            return Err(Error::Precondition("v divides n".into()));
        }
        let q = f.order();
        let q_v = q.pow(v.degree().unwrap_or(0) as u32);
        let base = GroupSpec::gamma(n.clone())?;
        let spec = |k: u32| {
            if k == 0 {
                Ok(base.clone())
            } else {
                base.with_gamma0(v, k)
            }
        };
        let l0 = Level::build(&spec(r)?, false)?;
        let l1 = Level::build(&spec(r + 1)?, false)?;
        let l2 = Level::build(&spec(r + 2)?, false)?;
        debug_assert_eq!(l2.spec().flavor(), Flavor::Gamma0vRCapGammaN);
        let w0 = if r == 0 {
            let s = PolyMat2::s(&f);
            assemble(&l0, &l0, |e| vec![(e.act(&s), 1)])?
        } else {
            atkin_lehner(&l0)?.matrix
        };
        let w1 = atkin_lehner(&l1)?.matrix;
        let w2 = atkin_lehner(&l2)?.matrix;
        Ok(Tower {
            v: v.clone(),
            r,
            q,
            q_v,
            pi0_up: pullback(&l0, &l1)?.matrix,
            pi00_up: pullback(&l1, &l2)?.matrix,
            pi0_down: pushforward(&l1, &l0)?.matrix,
            pi00_down: pushforward(&l2, &l1)?.matrix,
            w: [w0, w1, w2],
            levels: [l0, l1, l2],
        })
    }

    pub fn genera(&self) -> [usize; 3] {
        [
            self.levels[0].genus(),
            self.levels[1].genus(),
            self.levels[2].genus(),
        ]
    }

    /// `alpha^* = pi_00^* pi_0^*`.
    pub fn alpha(&self) -> RatMatrix {
        &self.pi00_up * &self.pi0_up
    }

    /// `beta^* = pi_00^* w_1 pi_0^* w_0`.
    pub fn beta(&self) -> RatMatrix {
        &(&(&self.pi00_up * &self.w[1]) * &self.pi0_up) * &self.w[0]
    }

    /// `gamma^* = w_2 pi_00^* pi_0^* w_0`.
    pub fn gamma(&self) -> RatMatrix {
        &(&(&self.w[2] * &self.pi00_up) * &self.pi0_up) * &self.w[0]
    }

    /// `T_v = w_0 pi_0* w_1 pi_0^* w_0` on `H(L0)`.
    pub fn t_v(&self) -> RatMatrix {
        let w0 = &self.w[0];
        &(&(&(w0 * &self.pi0_down) * &self.w[1]) * &self.pi0_up) * w0
    }

    /// `T_2v = pi_0* pi_00* w_2 pi_00^* pi_0^* w_0` on `H(L0)`.
    pub fn t_2v(&self) -> RatMatrix {
        let a = &(&self.pi0_down * &self.pi00_down) * &self.w[2];
        &(&(&a * &self.pi00_up) * &self.pi0_up) * &self.w[0]
    }

    /// `zeta_1: H(L0) -> H(L1)^2` under the given reading.
    pub fn zeta1(&self, reading: ZetaReading) -> RatMatrix {
        let twisted = &(&self.w[1] * &self.pi0_up) * &self.w[0];
        let neg = |m: &RatMatrix| m.scale(&BigRational::from_integer(BigInt::from(-1)));
        match reading {
            ZetaReading::A => self.pi0_up.vstack(&neg(&twisted)),
            ZetaReading::B => twisted.vstack(&neg(&self.pi0_up)),
        }
    }

    /// `zeta_2(a, b) = pi_00^* a + w_2 pi_00^* w_1 b`.
    pub fn zeta2(&self) -> RatMatrix {
        let b = &(&self.w[2] * &self.pi00_up) * &self.w[1];
        self.pi00_up.hstack(&b)
    }

    /// `(alpha^* | beta^* | gamma^*)`.
    pub fn three_copy(&self) -> RatMatrix {
        self.alpha().hstack(&self.beta()).hstack(&self.gamma())
    }

    /// `mu' mu` with `mu'` the adjoint of `mu` for the cochain pairings.
    pub fn mu_prime_mu(&self) -> Result<RatMatrix> {
        let mu = self.three_copy();
        let g0 = &self.levels[0].gram.entries;
        let g2 = &self.levels[2].gram.entries;
        let gi = g0.inverse()?;
        let z = RatMatrix::zeros(g0.rows(), g0.cols());
        let inv3 = RatMatrix::block(&[vec![&gi, &z, &z], vec![&z, &gi, &z], vec![&z, &z, &gi]]);
        Ok(&(&inv3 * &mu.transpose()) * &(g2 * &mu))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZetaReading {
    /// `zeta_1 = (pi_0^*, -w_1 pi_0^* w_0)`.
    A,
    /// `zeta_1 = (w_1 pi_0^* w_0, -pi_0^*)`.
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EntryReading {
    /// `(3, 2) = T_2v w q_v`, as displayed.
    Literal,
    /// `(3, 2) = T_v w q_v`, mirroring `(2, 3)`.
    Symmetric,
}

/// The displayed 3x3 block matrix built from `t_v`, `t_2v`, `w` and `q_v`.
pub fn tower_matrix(
    q_v: u64,
    t_v: &RatMatrix,
    t_2v: &RatMatrix,
    w: &RatMatrix,
    reading: EntryReading,
) -> RatMatrix {
    let n = t_v.rows();
    let qv = BigRational::from_integer(BigInt::from(q_v));
    let d = RatMatrix::identity(n).scale(&BigRational::from_integer(BigInt::from(q_v * (q_v + 1))));
    let a12 = (w * t_v).scale(&qv);
    let a13 = w * t_2v;
    let a21 = (t_v * w).scale(&qv);
    let a23 = (w * t_v).scale(&qv);
    let a31 = t_2v * w;
    let a32 = match reading {
        EntryReading::Literal => (t_2v * w).scale(&qv),
        EntryReading::Symmetric => (t_v * w).scale(&qv),
    };
    RatMatrix::block(&[
        vec![&d, &a12, &a13],
        vec![&a21, &d, &a23],
        vec![&a31, &a32, &d],
    ])
}

/// Block `(i, j)` of a `3n x 3n` matrix.
fn block(m: &RatMatrix, n: usize, i: usize, j: usize) -> RatMatrix {
    let r: Vec<usize> = (i * n..(i + 1) * n).collect();
    let c: Vec<usize> = (j * n..(j + 1) * n).collect();
    m.submatrix(&r, &c)
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixComparison {
    pub reading: EntryReading,
    /// Compared with the computed matrix transposed blockwise.
    pub transposed: bool,
    pub equal: bool,
    /// `[i][j]`: whether block `(i, j)` agrees.
    pub blocks: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessMod {
    pub l: u64,
    pub zeta1_rank: usize,
    pub zeta2_kernel_dim: usize,
    pub composite_zero: bool,
    pub exact: bool,
    pub three_copy_rank: usize,
    pub three_copy_injective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub n: String,
    pub v: String,
    pub r: u32,
    pub q_v: u64,
    pub genera: [usize; 3],
    pub alpha: IntMatrixJson,
    pub beta: IntMatrixJson,
    pub gamma: IntMatrixJson,
    pub mu_prime_mu: IntMatrixJson,
    /// Readings of `zeta_1` for which `zeta_2 zeta_1 = 0` over the integers.
    pub zeta_readings_composing_to_zero: Vec<ZetaReading>,
    pub comparisons: Vec<MatrixComparison>,
    /// Each computed block of `mu' mu` named as one of the expressions
    /// `c X`, `c w X`, `c X w`, `c w X w` with `X` in `{1, T_v, T_2v}`,
    /// `c` in `{1, q_v, q_v(q_v+1)}`, `w = w_0`.
    pub identified_blocks: Vec<Vec<Option<String>>>,
    pub t_v_self_adjoint: bool,
    pub t_2v_self_adjoint: bool,
    #[serde(serialize_with = "ser_bigs")]
    pub s_gamma: Vec<BigInt>,
    /// Primes `l <= bound` skipped, with the reason.
    pub skipped: Vec<(u64, String)>,
    pub exactness: Vec<ExactnessMod>,
    /// For `r = 0`: `[Gamma(n) : Gamma(nv)]`, `|SL_2(F_{q_v})|` by
    /// enumeration (when `q_v <= 4`) and `q_v (q_v^2 - 1)`.
    pub delta_order: Option<(u64, Option<u64>, u64)>,
}

fn identify_blocks(
    mm: &RatMatrix,
    n: usize,
    q_v: u64,
    tv: &RatMatrix,
    t2v: &RatMatrix,
    w: &RatMatrix,
) -> Vec<Vec<Option<String>>> {
    let id = RatMatrix::identity(n);
    let mut cands: Vec<(String, RatMatrix)> = Vec::new();
    for (cn, c) in [("", 1), ("q_v ", q_v), ("q_v(q_v+1) ", q_v * (q_v + 1))] {
        let c = BigRational::from_integer(BigInt::from(c));
        for (xn, x) in [("1", &id), ("T_v", tv), ("T_2v", t2v)] {
            let forms = [
                (xn.to_string(), x.clone()),
                (format!("w {xn}"), w * x),
                (format!("{xn} w"), x * w),
                (format!("w {xn} w"), &(w * x) * w),
            ];
            for (fname, m) in forms {
                cands.push((format!("{cn}{fname}"), m.scale(&c)));
            }
        }
    }
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let b = block(mm, n, i, j);
                    cands.iter().find(|(_, m)| *m == b).map(|(s, _)| s.clone())
                })
                .collect()
        })
        .collect()
}

/// `|SL_2(F_q)|` by enumerating matrices.
pub fn sl2_order_bruteforce(q: u64) -> Result<u64> {
    let f = FiniteField::new(q)?;
    let els: Vec<_> = f.elements().collect();
    let one = f.one();
    let mut count = 0;
    for &a in &els {
        for &b in &els {
            for &c in &els {
                for &d in &els {
                    if f.sub(f.mul(a, d), f.mul(b, c)) == one {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

fn rank_mod(m: &IntMatrix, f: &FiniteField) -> usize {
    FqMatrix::from_int(f, m).rank()
}

/// Runs every tower check for primes up to `l_bound`.
pub fn tower_check(n: &FqPoly, v: &FqPoly, r: u32, l_bound: u64) -> Result<TowerReport> {
    let t = Tower::build(n, v, r)?;
    let g = t.genera();
    let alpha = int(&t.alpha(), "alpha")?;
    let beta = int(&t.beta(), "beta")?;
    let gamma = int(&t.gamma(), "gamma")?;
    let mm = t.mu_prime_mu()?;
    let mm_int = int(&mm, "mu' mu")?;

    let z2 = t.zeta2();
    let mut readings = Vec::new();
    for r in [ZetaReading::A, ZetaReading::B] {
        if (&z2 * &t.zeta1(r)).is_zero() {
            readings.push(r);
        }
    }

    let tv = t.t_v();
    let t2v = t.t_2v();
    let w0 = &t.w[0];
    let mut comparisons = Vec::new();
    for reading in [EntryReading::Literal, EntryReading::Symmetric] {
        let printed = tower_matrix(t.q_v, &tv, &t2v, w0, reading);
        for transposed in [false, true] {
            let blocks: Vec<Vec<bool>> = (0..3)
                .map(|i| {
                    (0..3)
                        .map(|j| {
                            let c = if transposed {
                                block(&mm, g[0], j, i)
                            } else {
                                block(&mm, g[0], i, j)
                            };
                            c == block(&printed, g[0], i, j)
                        })
                        .collect()
                })
                .collect();
            comparisons.push(MatrixComparison {
                reading,
                transposed,
                equal: blocks.iter().flatten().all(|&b| b),
                blocks,
            });
        }
    }
    let identified_blocks = identify_blocks(&mm, g[0], t.q_v, &tv, &t2v, w0);
    let gram0 = &t.levels[0].gram.entries;
    let sa = |m: &RatMatrix| (gram0 * m) == (&m.transpose() * gram0);

    let s_g = s_gamma(&t.levels[0].lattice, &t.levels[0].gram)?;
    let bad = prime_divisors(&BigInt::from(t.q * (t.q_v + 1)));
    let mut skipped = Vec::new();
    let mut exactness = Vec::new();
    // the reading composing to zero, B when both do
    let reading = readings.last().copied().unwrap_or(ZetaReading::B);
    let z1 = int(&t.zeta1(reading), "zeta_1")?;
    let z2i = int(&z2, "zeta_2")?;
    let three = int(&t.three_copy(), "three-copy map")?;
    for l in primes_up_to(l_bound) {
        let lb = BigInt::from(l);
        if bad.contains(&lb) {
            skipped.push((l, "divides q(q_v+1)".to_string()));
            continue;
        }
        if s_g.contains(&lb) {
            skipped.push((l, "in S_Gamma".to_string()));
            continue;
        }
        let f = FiniteField::new(l)?;
        let r1 = rank_mod(&z1, &f);
        let kdim = z2i.cols() - rank_mod(&z2i, &f);
        let comp = FqMatrix::from_int(&f, &z2i)
            .mul(&FqMatrix::from_int(&f, &z1))
            .is_zero();
        let r3 = rank_mod(&three, &f);
        exactness.push(ExactnessMod {
            l,
            zeta1_rank: r1,
            zeta2_kernel_dim: kdim,
            composite_zero: comp,
            exact: r1 == g[0] && comp && kdim == r1,
            three_copy_rank: r3,
            three_copy_injective: r3 == 3 * g[0],
        });
    }

    let delta_order = if r == 0 {
        let s0 = GroupSpec::gamma(n.clone())?;
        let snv = GroupSpec::gamma(n * v)?;
        let index = snv.index_in_sl2() / s0.index_in_sl2();
        let brute = if t.q_v <= 4 {
            Some(sl2_order_bruteforce(t.q_v)?)
        } else {
            None
        };
        Some((index, brute, t.q_v * (t.q_v * t.q_v - 1)))
    } else {
        None
    };
    Ok(TowerReport {
        n: n.to_text(),
        v: v.to_text(),
        r,
        q_v: t.q_v,
        genera: g,
        alpha: (&alpha).into(),
        beta: (&beta).into(),
        gamma: (&gamma).into(),
        mu_prime_mu: (&mm_int).into(),
        zeta_readings_composing_to_zero: readings,
        comparisons,
        identified_blocks,
        t_v_self_adjoint: sa(&tv),
        t_2v_self_adjoint: sa(&t2v),
        s_gamma: s_g,
        skipped,
        exactness,
        delta_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(x: i64) -> RatMatrix {
        RatMatrix::identity(1).scale(&BigRational::from_integer(BigInt::from(x)))
    }

    #[test]
    fn scalar_tower_matrix() {
        let (a, b) = (5, 7);
        let m = tower_matrix(2, &scalar(a), &scalar(b), &scalar(1), EntryReading::Literal);
        let expect = [[6, 2 * a, b], [2 * a, 6, 2 * a], [b, 2 * b, 6]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.get(i, j), &BigRational::from_integer(BigInt::from(expect[i][j])));
            }
        }
        let s = tower_matrix(2, &scalar(a), &scalar(b), &scalar(1), EntryReading::Symmetric);
        assert_eq!(s, s.transpose());
    }

    #[test]
    fn sl2_orders() {
        for q in [2, 3, 4] {
            assert_eq!(sl2_order_bruteforce(q).unwrap(), q * (q * q - 1));
        }
    }
}
