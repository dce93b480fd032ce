//! Univariate polynomials over `Z`: arithmetic, resultants, factorization
//! modulo a prime and over `Z`, and exact real-root location.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{FiniteField, FqElem};
use super::fqpoly::FqPoly;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Polynomial with ascending integer coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `x - a`
    pub fn linear_root(a: &BigInt) -> Self {
        Self::new(vec![-a.clone(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = -1`.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(a x)`
    pub fn dilate(&self, a: &BigInt) -> Self {
        let mut pw = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw *= a;
        }
        Self::new(out)
    }

    /// Composition `p(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(q).add(&Self::constant(c.clone())))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Division by a monic polynomial; exact over `Z`.
    pub fn div_rem_monic(&self, d: &Self) -> (Self, Self) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        (Self::new(q), Self::new(r))
    }

    /// Exact quotient `self / d` over `Z` if `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem_rat(d);
        if !r.iter().all(|c| c.is_zero()) || !q.iter().all(|c| c.is_integer()) {
            return None;
        }
        Some(Self::new(q.into_iter().map(|c| c.to_integer()).collect()))
    }

    fn div_rem_rat(&self, d: &Self) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let dd = d.coeffs.len() - 1;
        let lc = BigRational::from_integer(d.leading());
        if r.len() <= dd {
            return (Vec::new(), r);
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i + j] -= &c * BigRational::from_integer(dj.clone());
            }
            q[i] = c;
        }
        (q, r)
    }

    /// Gcd of the primitive parts (content ignored), positive leading
    /// coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        while !b.is_zero() {
            let (_, r) = a.div_rem_rat(&b);
            let den = r.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let r = Self::new(
                r.iter()
                    .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                    .collect(),
            );
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Squarefree part (primitive).
    pub fn squarefree_part(&self) -> Self {
        if self.deg_i64() <= 0 {
            return self.primitive_part();
        }
        let g = self.primitive_part().gcd(&self.derivative());
        self.primitive_part()
            .exact_div(&g)
            .expect("gcd divides")
            .primitive_part()
    }

    /// Resultant via the Sylvester determinant: for `f = a prod (x - r_i)`
    /// of degree `m` and `g` of degree `n`, `Res(f, g) = a^n prod g(r_i)`.
    pub fn resultant(&self, g: &Self) -> BigInt {
        if self.is_zero() || g.is_zero() {
            return BigInt::zero();
        }
        let m = self.coeffs.len() - 1;
        let n = g.coeffs.len() - 1;
        if m == 0 {
            return num_traits::pow(self.leading(), n);
        }
        if n == 0 {
            return num_traits::pow(g.leading(), m);
        }
        let size = m + n;
        let mut s = IntMatrix::zeros(size, size);
        for i in 0..n {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                s.set(i, i + j, c.clone());
            }
        }
        for i in 0..m {
            for (j, c) in g.coeffs.iter().rev().enumerate() {
                s.set(n + i, i + j, c.clone());
            }
        }
        s.det().expect("square")
    }

    /// Reduction modulo a prime `l`, as a polynomial over `GF(l)`.
    pub fn to_fp(&self, field: &FiniteField) -> FqPoly {
        let l = BigInt::from(field.characteristic());
        FqPoly::new(
            field,
            self.coeffs
                .iter()
                .map(|c| FqElem(c.mod_floor(&l).to_u64().expect("residue")))
                .collect(),
        )
    }

    pub fn from_fp(p: &FqPoly) -> Self {
        Self::new(p.coeffs().iter().map(|c| BigInt::from(c.0)).collect())
    }

    /// Factorization modulo a prime `l` into monic irreducibles (coefficients
    /// in `0..l`) with multiplicities. The leading unit is dropped.
    pub fn factor_mod(&self, l: u64) -> Result<Vec<(IntPoly, u32)>> {
        let field = FiniteField::new(l)?;
        if !field.is_prime_field() {
            return Err(Error::Precondition(format!("{l} is not prime")));
        }
        let fp = self.to_fp(&field);
        if fp.is_zero() {
            return Err(Error::ZeroPolynomial(format!("modulo {l}")));
        }
        Ok(fp
            .factor()
            .into_iter()
            .map(|(f, e)| (Self::from_fp(&f), e))
            .collect())
    }

    /// Factorization over `Z` into primitive irreducibles with positive
    /// leading coefficients and multiplicities, sorted by (degree, coeffs).
    /// The content and sign are returned separately.
    pub fn factor(&self) -> (BigInt, Vec<(IntPoly, u32)>) {
        assert!(!self.is_zero(), "cannot factor zero");
        let mut unit = self.content();
        if self.leading().is_negative() {
            unit = -unit;
        }
        let mut out: Vec<(IntPoly, u32)> = Vec::new();
        // squarefree decomposition over Q (Yun)
        let f = self.primitive_part();
        if f.deg_i64() <= 0 {
            return (unit, out);
        }
        let mut mult = 1u32;
        let mut a = f.clone();
        let mut b = a.gcd(&a.derivative());
        let mut c = a.exact_div(&b).unwrap().primitive_part();
        loop {
            if c.deg_i64() <= 0 {
                break;
            }
            let y = c.gcd(&b);
            let z = c.exact_div(&y).unwrap().primitive_part();
            if z.deg_i64() > 0 {
                for fac in zassenhaus(&z) {
                    out.push((fac, mult));
                }
            }
            b = b.exact_div(&y).unwrap().primitive_part();
            c = y;
            a = b.clone();
            mult += 1;
            if a.deg_i64() <= 0 && c.deg_i64() <= 0 {
                break;
            }
        }
        out.sort_by(|x, y| poly_order(&x.0, &y.0));
        (unit, out)
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        let s = sturm_sequence(&self.squarefree_part());
        let at = |sign_of: &dyn Fn(&RatPoly) -> Ordering| variations(s.iter().map(sign_of));
        let lo = at(&|p| p.sign_at_neg_infinity());
        let hi = at(&|p| p.sign_at_pos_infinity());
        lo - hi
    }

    /// Distinct real roots strictly greater than `c * sqrt(q)` (`q >= 0`).
    pub fn count_roots_above_surd(&self, c: i64, q: u64) -> usize {
        let s = sturm_sequence(&self.squarefree_part());
        let at_b = variations(s.iter().map(|p| p.sign_at_surd(c, q)));
        let at_inf = variations(s.iter().map(|p| p.sign_at_pos_infinity()));
        at_b - at_inf
    }

    /// All complex roots are real and bounded by `2 sqrt(q)` in absolute
    /// value.
    pub fn roots_within_ramanujan_bound(&self, q: u64) -> bool {
        let sf = self.squarefree_part();
        let Some(d) = sf.degree() else { return true };
        sf.count_real_roots() == d
            && sf.count_roots_above_surd(2, q) == 0
            && sf.reflect().count_roots_above_surd(2, q) == 0
    }
}

fn poly_order(a: &IntPoly, b: &IntPoly) -> Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}

// ---------------------------------------------------------------------------
// Zassenhaus factorization of a squarefree primitive polynomial

fn symmetric_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce_sym(p: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(p.coeffs.iter().map(|c| symmetric_mod(c, m)).collect())
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|n| (2..).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

/// Splits `f` (monic over Z, `f = g h mod l`) into a lift mod `l^k`.
fn hensel_lift(f: &IntPoly, g: &FqPoly, h: &FqPoly, l: u64, k: u32) -> (IntPoly, IntPoly) {
    let field = g.field().clone();
    let (one, sigma, tau) = g.xgcd(h);
    debug_assert!(one.is_one());
    let lb = BigInt::from(l);
    let mut gz = IntPoly::from_fp(g);
    let mut hz = IntPoly::from_fp(h);
    let mut modulus = lb.clone();
    for _ in 1..k {
        // e = (f - g h) / l^j mod l
        let diff = f.sub(&gz.mul(&hz));
        let e = IntPoly::new(diff.coeffs.iter().map(|c| c / &modulus).collect());
        let ef = e.to_fp(&field);
        let te = &tau * &ef;
        let (q, r) = te.div_rem(g);
        let dh = &(&q * h) + &(&sigma * &ef);
        gz = gz.add(&IntPoly::from_fp(&r).scale(&modulus));
        hz = hz.add(&IntPoly::from_fp(&dh).scale(&modulus));
        modulus *= &lb;
        gz = reduce_sym(&gz, &modulus);
        hz = reduce_sym(&hz, &modulus);
    }
    (gz, hz)
}

fn multifactor_lift(f: &IntPoly, facs: &[FqPoly], l: u64, k: u32) -> Vec<IntPoly> {
    if facs.len() == 1 {
        let m = num_traits::pow(BigInt::from(l), k as usize);
        return vec![reduce_sym(f, &m)];
    }
    let mid = facs.len() / 2;
    let field = facs[0].field().clone();
    let prod = |s: &[FqPoly]| s.iter().fold(FqPoly::one(&field), |a, b| &a * b);
    let g = prod(&facs[..mid]);
    let h = prod(&facs[mid..]);
    let (gz, hz) = hensel_lift(f, &g, &h, l, k);
    let mut out = multifactor_lift(&gz, &facs[..mid], l, k);
    out.extend(multifactor_lift(&hz, &facs[mid..], l, k));
    out
}

fn zassenhaus(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree().expect("nonzero");
    if n == 1 {
        return vec![f.primitive_part()];
    }
    // monic transform F(x) = a^(n-1) f(x / a)
    let a = f.leading();
    let mut mc = Vec::with_capacity(n + 1);
    let mut pw = BigInt::one();
    for i in (0..=n).rev() {
        mc.push(f.coeffs[i].clone() * &pw);
        pw *= &a;
    }
    mc.reverse();
    // mc[i] = f_i a^(n-i); dividing by a gives the monic polynomial
    let big_f = IntPoly::new(mc.into_iter().map(|c| c / &a).collect());
    debug_assert!(big_f.is_monic());

    let (l, facs) = small_primes()
        .find_map(|l| {
            let field = FiniteField::new(l).ok()?;
            let fp = big_f.to_fp(&field);
            if !fp.gcd(&fp.derivative()).is_one() {
                return None;
            }
            let facs: Vec<FqPoly> = fp.factor().into_iter().map(|(p, _)| p).collect();
            Some((l, facs))
        })
        .expect("some prime keeps a squarefree polynomial squarefree");
    if facs.len() == 1 {
        return vec![f.primitive_part()];
    }
    // coefficient bound for factors of the monic transform
    let norm2: BigInt = big_f.coeffs.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * (norm2.sqrt() + 1u32);
    let lb = BigInt::from(l);
    let mut k = 1u32;
    let mut m = lb.clone();
    while m <= &bound * 2u32 {
        m *= &lb;
        k += 1;
    }
    let mut lifted = multifactor_lift(&big_f, &facs, l, k);
    let mut result = Vec::new();
    let mut rest = big_f.clone();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        for subset in combinations(lifted.len(), s) {
            let cand = subset
                .iter()
                .fold(IntPoly::one(), |acc, &i| reduce_sym(&acc.mul(&lifted[i]), &m));
            if let Some(q) = rest.exact_div(&cand) {
                result.push(cand);
                rest = q;
                let keep: Vec<IntPoly> = lifted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, p)| p.clone())
                    .collect();
                lifted = keep;
                continue 'outer;
            }
        }
        s += 1;
    }
    result.push(rest);
    // undo the transform: g(x) = pp(G(a x))
    result
        .into_iter()
        .map(|g| g.dilate(&a).primitive_part())
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Sturm sequences over Q

#[derive(Clone, Debug)]
struct RatPoly(Vec<BigRational>);

impl RatPoly {
    fn from_int(p: &IntPoly) -> Self {
        RatPoly(
            p.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn rem(&self, d: &RatPoly) -> RatPoly {
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        let lc = d.0[dd].clone();
        while r.len() > dd {
            let c = r.last().unwrap() / &lc;
            let off = r.len() - 1 - dd;
            for (j, dj) in d.0.iter().enumerate() {
                r[off + j] -= &c * dj;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        RatPoly(r).trim()
    }

    fn sign_at_pos_infinity(&self) -> Ordering {
        self.0.last().map_or(Ordering::Equal, |c| c.cmp(&BigRational::zero()))
    }

    fn sign_at_neg_infinity(&self) -> Ordering {
        let s = self.sign_at_pos_infinity();
        if self.0.len().is_multiple_of(2) {
            s.reverse()
        } else {
            s
        }
    }

    /// Sign of the value at `c sqrt(q)`.
    fn sign_at_surd(&self, c: i64, q: u64) -> Ordering {
        // p(x) = E(x^2) + x O(x^2) with x^2 = c^2 q
        let x2 = BigRational::from_integer(BigInt::from(c * c) * BigInt::from(q));
        let mut even = BigRational::zero();
        let mut odd = BigRational::zero();
        for i in (0..self.0.len()).rev().filter(|i| i % 2 == 0) {
            even = even * &x2 + &self.0[i];
        }
        for i in (0..self.0.len()).rev().filter(|i| i % 2 == 1) {
            odd = odd * &x2 + &self.0[i];
        }
        // value = even + c * odd * sqrt(q)
        let b = odd * BigRational::from_integer(BigInt::from(c));
        surd_sign(&even, &b, q)
    }
}

/// Sign of `a + b sqrt(q)`.
fn surd_sign(a: &BigRational, b: &BigRational, q: u64) -> Ordering {
    let zero = BigRational::zero();
    let sa = a.cmp(&zero);
    let sb = if q == 0 { Ordering::Equal } else { b.cmp(&zero) };
    if sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    // opposite signs: compare a^2 with b^2 q
    let lhs = a * a;
    let rhs = b * b * BigRational::from_integer(BigInt::from(q));
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

fn sturm_sequence(p: &IntPoly) -> Vec<RatPoly> {
    let mut seq = vec![RatPoly::from_int(p), RatPoly::from_int(&p.derivative())];
    if seq[1].is_zero() {
        seq.pop();
        return seq;
    }
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(RatPoly(r.0.into_iter().map(|c| -c).collect()));
    }
    seq
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-2, 0, 1]).to_string(), "x^2 - 2");
        assert_eq!(p(&[1, -1]).to_string(), "-x + 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(p(&[-2, 1]).resultant(&p(&[-3, 1])), BigInt::from(-1));
        assert_eq!(p(&[2, -3, 1]).resultant(&p(&[0, 1])), BigInt::from(2));
        assert_eq!(p(&[2, -3, 1]).resultant(&p(&[-1, 0, 1])), BigInt::from(0));
    }

    #[test]
    fn resultant_matches_root_product() {
        // f = (x-1)(x+2)(x-3), g arbitrary: Res = prod g(root)
        let f = p(&[-1, 1]).mul(&p(&[2, 1])).mul(&p(&[-3, 1]));
        let g = p(&[5, -1, 2]);
        let expect: BigInt = [1, -2, 3].iter().map(|&r| g.eval(&BigInt::from(r))).product();
        assert_eq!(f.resultant(&g), expect);
    }

    #[test]
    fn factor_mod_examples() {
        let f = p(&[1, 0, 1]).factor_mod(5).unwrap();
        assert_eq!(f, vec![(p(&[2, 1]), 1), (p(&[3, 1]), 1)]);
        let f = p(&[1, 0, 1]).factor_mod(3).unwrap();
        assert_eq!(f, vec![(p(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn factor_over_z() {
        let f = p(&[-1, 1]).mul(&p(&[1, 1])).mul(&p(&[-2, 0, 1]));
        let (u, facs) = f.factor();
        assert_eq!(u, BigInt::one());
        assert_eq!(
            facs,
            vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1), (p(&[-2, 0, 1]), 1)]
        );
        // x^4 + 1 is irreducible but splits modulo every prime
        let (_, facs) = p(&[1, 0, 0, 0, 1]).factor();
        assert_eq!(facs, vec![(p(&[1, 0, 0, 0, 1]), 1)]);
        // non-monic with repeated factor
        let g = p(&[1, 2]).pow(2).mul(&p(&[-3, 0, 5])).scale(&BigInt::from(-6));
        let (u, facs) = g.factor();
        assert_eq!(u, BigInt::from(-6));
        assert_eq!(facs, vec![(p(&[1, 2]), 2), (p(&[-3, 0, 5]), 1)]);
    }

    #[test]
    fn real_root_counts() {
        assert_eq!(p(&[-2, 0, 1]).count_real_roots(), 2);
        assert_eq!(p(&[1, 0, 1]).count_real_roots(), 0);
        // roots 0, +-sqrt 8 = +-2 sqrt 2: on the boundary for q = 2
        let f = p(&[0, -8, 0, 1]);
        assert!(f.roots_within_ramanujan_bound(2));
        assert!(!f.roots_within_ramanujan_bound(1));
        // x - 3 vs 2 sqrt 2 ~ 2.83
        assert!(!p(&[-3, 1]).roots_within_ramanujan_bound(2));
        assert!(p(&[-3, 1]).roots_within_ramanujan_bound(3));
        assert!(!p(&[1, 0, 1]).roots_within_ramanujan_bound(5));
    }
}
