//! Polynomials over a finite field, i.e. elements of `F_q[t]`.
//!
//! Text form: ascending comma-separated coefficient codes, `"1,1,0,1"` is
//! `1 + t + t^3`. The zero polynomial prints as `"0"`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{FiniteField, FqElem};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct FqPoly {
    field: FiniteField,
    coeffs: Vec<FqElem>,
}

impl PartialEq for FqPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
impl Eq for FqPoly {}

impl Hash for FqPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Orders by degree first, then by coefficients from the top down.
impl Ord for FqPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}
impl PartialOrd for FqPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqPoly[{}]", self.to_text())
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if c.0 == 1 && i > 0 {
                String::new()
            } else if i > 0 {
                format!("{}*", c.0)
            } else {
                format!("{}", c.0)
            };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}t")?,
                _ => write!(f, "{coef}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl FqPoly {
    pub fn new(field: &FiniteField, mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FiniteField) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &FiniteField) -> Self {
        Self::constant(field, FqElem::ONE)
    }

    pub fn constant(field: &FiniteField, c: FqElem) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(field: &FiniteField, c: FqElem, k: usize) -> Self {
        let mut v = vec![FqElem::ZERO; k + 1];
        v[k] = c;
        Self::new(field, v)
    }

    /// The variable `t`.
    pub fn t(field: &FiniteField) -> Self {
        Self::monomial(field, FqElem::ONE, 1)
    }

    pub fn from_codes(field: &FiniteField, codes: &[u64]) -> Result<Self> {
        let coeffs = codes
            .iter()
            .map(|&c| field.elem(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(field, coeffs))
    }

    /// Parses the ascending comma form, e.g. `"1,1,0,1"`.
    pub fn parse(field: &FiniteField, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let codes = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("bad coefficient {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_codes(field, &codes)
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.0.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FqElem::ONE
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = -1` (a convenient stand-in for `-inf`).
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FqElem::ONE
    }

    pub fn monic(&self) -> Self {
        match self.field.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: FqElem) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![FqElem::ZERO; k];
        v.extend_from_slice(&self.coeffs);
        Self::new(&self.field, v)
    }

    /// Drops all terms of degree `< k` and divides by `t^k`.
    pub fn unshift(&self, k: usize) -> Self {
        if k >= self.coeffs.len() {
            return Self::zero(&self.field);
        }
        Self::new(&self.field, self.coeffs[k..].to_vec())
    }

    pub fn eval(&self, x: FqElem) -> FqElem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FqElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
            .collect();
        Self::new(f, coeffs)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = &self.field;
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(f), self.clone());
        }
        let inv_lead = f.inv(d.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let dl = d.coeffs.len();
        let mut quot = vec![FqElem::ZERO; rem.len() - dl + 1];
        for top in (dl - 1..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let factor = f.mul(c, inv_lead);
            let shift = top + 1 - dl;
            quot[shift] = factor;
            for (k, &dc) in d.coeffs.iter().enumerate() {
                rem[shift + k] = f.sub(rem[shift + k], f.mul(factor, dc));
            }
        }
        (Self::new(f, quot), Self::new(f, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, u)` with `s*self + u*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match f.inv(r0.leading()) {
            Some(inv) => (r0.scale(inv), s0.scale(inv), t0.scale(inv)),
            None => (r0, s0, t0),
        }
    }

    /// Inverse modulo `m`, if `gcd(self, m) = 1`.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.xgcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        (self * other).rem(m)
    }

    pub fn pow_mod(&self, mut exp: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(&self.field).rem(m);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            exp >>= 1;
        }
        acc
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `t^(q^k) mod self`, by repeated `q`-th powering.
    fn frobenius_power_of_t(&self, k: u32) -> Self {
        let q = self.field.order() as u128;
        let mut x = Self::t(&self.field).rem(self);
        for _ in 0..k {
            x = x.pow_mod(q, self);
        }
        x
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let t = Self::t(&self.field);
        let q = self.field.order() as u128;
        let full = self.frobenius_power_of_t(d as u32);
        if !(&full - &t).rem(self).is_zero() {
            return false;
        }
        let mut prime_divisors = Vec::new();
        let mut m = d;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                prime_divisors.push(p);
                while m % p == 0 {
                    m /= p;
                }
            }
            p += 1;
        }
        if m > 1 {
            prime_divisors.push(m);
        }
        for r in prime_divisors {
            let mut x = t.rem(self);
            for _ in 0..d / r {
                x = x.pow_mod(q, self);
            }
            if !self.gcd(&(&x - &t)).is_one() {
                return false;
            }
        }
        true
    }

    /// All monic polynomials of exact degree `d`, in increasing code order.
    pub fn monic_of_degree(field: &FiniteField, d: usize) -> Vec<Self> {
        let q = field.order();
        let count = q.pow(d as u32);
        (0..count)
            .map(|mut code| {
                let mut v: Vec<FqElem> = (0..d)
                    .map(|_| {
                        let c = code % q;
                        code /= q;
                        FqElem(c)
                    })
                    .collect();
                v.push(FqElem::ONE);
                Self::new(field, v)
            })
            .collect()
    }

    /// All polynomials of degree `< d` (including zero), in increasing code order.
    pub fn all_below_degree(field: &FiniteField, d: usize) -> Vec<Self> {
        let q = field.order();
        let count = q.pow(d as u32);
        (0..count)
            .map(|mut code| {
                let v: Vec<FqElem> = (0..d)
                    .map(|_| {
                        let c = code % q;
                        code /= q;
                        FqElem(c)
                    })
                    .collect();
                Self::new(field, v)
            })
            .collect()
    }

    pub fn monic_irreducibles_of_degree(field: &FiniteField, d: usize) -> Vec<Self> {
        Self::monic_of_degree(field, d)
            .into_iter()
            .filter(|p| p.is_irreducible())
            .collect()
    }

    /// Factorization into monic irreducibles with multiplicities, sorted;
    /// the unit (leading coefficient) is dropped.
    pub fn factor(&self) -> Vec<(Self, u32)> {
        assert!(!self.is_zero(), "cannot factor zero");
        let mut out = Vec::new();
        for (sqf, mult) in self.monic().squarefree_decomposition() {
            for (deg_part, d) in sqf.distinct_degree() {
                for fac in deg_part.equal_degree(d) {
                    out.push((fac, mult));
                }
            }
        }
        out.sort();
        // merge equal factors (can appear via the p-th root recursion)
        let mut merged: Vec<(Self, u32)> = Vec::new();
        for (f, m) in out {
            match merged.last_mut() {
                Some((g, k)) if *g == f => *k += m,
                _ => merged.push((f, m)),
            }
        }
        merged
    }

    /// Yun/Musser squarefree decomposition of a monic polynomial.
    fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let f = &self.field;
        let p = f.characteristic();
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let d = self.derivative();
        if d.is_zero() {
            // self = g(t^p); take the p-th root coefficientwise
            let root = self.pth_root();
            for (g, m) in root.squarefree_decomposition() {
                out.push((g, m * p as u32));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.div_rem(&c).0;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0;
            if !z.is_one() {
                out.push((z.monic(), i));
            }
            i += 1;
            w = y;
            c = c.div_rem(&w).0;
        }
        if !c.is_one() && !c.is_constant() {
            let root = c.monic().pth_root();
            for (g, m) in root.squarefree_decomposition() {
                out.push((g, m * p as u32));
            }
        }
        out
    }

    fn pth_root(&self) -> Self {
        let f = &self.field;
        let p = f.characteristic() as usize;
        // coefficient-wise inverse Frobenius: c^(q/p)
        let e = f.order() / f.characteristic();
        let coeffs = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&c| f.pow(c, e))
            .collect();
        Self::new(f, coeffs)
    }

    /// Distinct-degree factorization of a squarefree monic polynomial.
    fn distinct_degree(&self) -> Vec<(Self, usize)> {
        let fld = &self.field;
        let q = fld.order() as u128;
        let mut out = Vec::new();
        let mut rest = self.clone();
        let t = Self::t(fld);
        let mut x = t.clone();
        let mut d = 0;
        while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            x = x.pow_mod(q, &rest);
            let g = rest.gcd(&(&x - &t));
            if !g.is_one() {
                out.push((g.clone(), d));
                rest = rest.div_rem(&g).0;
                x = x.rem(&rest);
            }
        }
        if let Some(deg) = rest.degree() {
            if deg > 0 {
                out.push((rest.monic(), deg));
            }
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of degree-`d` irreducibles.
    fn equal_degree(&self, d: usize) -> Vec<Self> {
        let n = self.degree().unwrap_or(0);
        if n == d {
            return vec![self.monic()];
        }
        let fld = &self.field;
        let q = fld.order();
        let p = fld.characteristic();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
        loop {
            let a = Self::new(
                fld,
                (0..n).map(|_| FqElem(rng.gen_range(0..q))).collect(),
            );
            if a.is_constant() {
                continue;
            }
            let g = if p == 2 {
                // trace map into F_2: sum_{i < e*d} a^(2^i)
                let steps = fld.degree() as usize * d;
                let mut acc = a.rem(self);
                let mut term = acc.clone();
                for _ in 1..steps {
                    term = term.mul_mod(&term, self);
                    acc = &acc + &term;
                }
                self.gcd(&acc)
            } else {
                let e = ((q as u128).pow(d as u32) - 1) / 2;
                let b = a.pow_mod(e, self);
                self.gcd(&(&b - &Self::one(fld)))
            };
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let h = self.div_rem(&g).0;
                let mut out = g.equal_degree(d);
                out.extend(h.monic().equal_degree(d));
                out.sort();
                return out;
            }
        }
    }
}

impl<'a> Add<&'a FqPoly> for &'a FqPoly {
    type Output = FqPoly;
    fn add(self, rhs: &FqPoly) -> FqPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        FqPoly::new(f, v)
    }
}

impl<'a> Sub<&'a FqPoly> for &'a FqPoly {
    type Output = FqPoly;
    fn sub(self, rhs: &FqPoly) -> FqPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        FqPoly::new(f, v)
    }
}

impl Neg for &FqPoly {
    type Output = FqPoly;
    fn neg(self) -> FqPoly {
        let f = &self.field;
        FqPoly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl<'a> Mul<&'a FqPoly> for &'a FqPoly {
    type Output = FqPoly;
    fn mul(self, rhs: &FqPoly) -> FqPoly {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return FqPoly::zero(f);
        }
        let mut v = vec![FqElem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        FqPoly::new(f, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> FiniteField {
        FiniteField::new(q).unwrap()
    }

    #[test]
    fn parse_and_print_round_trip() {
        let fld = f(2);
        let p = FqPoly::parse(&fld, "1,1,0,1").unwrap();
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.to_text(), "1,1,0,1");
        assert_eq!(p.to_string(), "t^3 + t + 1");
        assert!(FqPoly::parse(&fld, "1,2").is_err());
        assert_eq!(FqPoly::parse(&fld, "0").unwrap().to_text(), "0");
    }

    #[test]
    fn degree_is_additive() {
        let fld = f(3);
        let a = FqPoly::parse(&fld, "1,2,1").unwrap();
        let b = FqPoly::parse(&fld, "2,0,0,1").unwrap();
        assert_eq!((&a * &b).degree(), Some(5));
    }

    #[test]
    fn division_identity() {
        let fld = f(5);
        let a = FqPoly::parse(&fld, "1,2,3,4,0,1").unwrap();
        let b = FqPoly::parse(&fld, "3,0,2").unwrap();
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree d over F_q: (1/d) sum mu(d/e) q^e
        let cases = [(2u64, 1usize, 2usize), (2, 2, 1), (2, 3, 2), (2, 4, 3), (3, 2, 3), (3, 3, 8), (4, 2, 6)];
        for (q, d, expected) in cases {
            assert_eq!(
                FqPoly::monic_irreducibles_of_degree(&f(q), d).len(),
                expected,
                "q={q} d={d}"
            );
        }
    }

    #[test]
    fn factorization_recovers_product() {
        for q in [2u64, 3, 4, 5] {
            let fld = f(q);
            let a = FqPoly::parse(&fld, "1,1").unwrap();
            let b = FqPoly::monic_irreducibles_of_degree(&fld, 2)[0].clone();
            let c = FqPoly::monic_irreducibles_of_degree(&fld, 3)[0].clone();
            let prod = &(&(&a * &a) * &b) * &(&c * &c.pow(q as u32));
            let fac = prod.factor();
            let mut back = FqPoly::one(&fld);
            for (g, m) in &fac {
                assert!(g.is_irreducible());
                back = &back * &g.pow(*m);
            }
            assert_eq!(back, prod.monic(), "q={q}");
        }
    }

    #[test]
    fn xgcd_bezout() {
        let fld = f(7);
        let a = FqPoly::parse(&fld, "1,0,3,1").unwrap();
        let b = FqPoly::parse(&fld, "2,5,1").unwrap();
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }
}
