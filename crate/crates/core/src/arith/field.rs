//! Finite fields `F_{p^e}` with elements packed as base-`p` digit strings.
//!
//! Element `a_0 + a_1 x + ... + a_{e-1} x^{e-1}` (in the basis of the field
//! modulus) is stored as the integer `a_0 + a_1 p + ... + a_{e-1} p^{e-1}`.
//! For prime fields this is simply the residue. Small fields precompute their
//! multiplication table.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An element of a [`FiniteField`], packed as described in the module docs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FqElem(pub u64);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

const TABLE_LIMIT: u64 = 1024;

struct Inner {
    p: u64,
    degree: u32,
    order: u64,
    /// Monic modulus, ascending, length `degree + 1`. Empty for prime fields.
    modulus: Vec<u64>,
    mul_table: Option<Vec<u32>>,
    inv_table: Option<Vec<u32>>,
}

/// A finite field context. Cheap to clone.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.degree == other.inner.degree
                && self.inner.modulus == other.inner.modulus)
    }
}
impl Eq for FiniteField {}

impl std::hash::Hash for FiniteField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.p.hash(state);
        self.inner.degree.hash(state);
        self.inner.modulus.hash(state);
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}", self.inner.order)?;
        if self.inner.degree > 1 {
            write!(f, ", modulus {:?}", self.inner.modulus)?;
        }
        write!(f, ")")
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^e`; `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    if !is_prime_u64(p) {
        return None;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

impl FiniteField {
    /// The field of order `q`. For `q = p^e` with `e > 1` the modulus is the
    /// monic irreducible of degree `e` whose packed coefficient encoding is
    /// least.
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::InvalidFieldOrder(q))?;
        if q >= (1u64 << 62) {
            return Err(Error::InvalidFieldOrder(q));
        }
        if e == 1 {
            return Ok(Self::build(p, 1, Vec::new()));
        }
        let prime = Self::build(p, 1, Vec::new());
        let tail = p.pow(e);
        for code in 0..tail {
            let mut coeffs: Vec<FqElem> = (0..e)
                .scan(code, |c, _| {
                    let d = *c % p;
                    *c /= p;
                    Some(FqElem(d))
                })
                .collect();
            coeffs.push(FqElem::ONE);
            let poly = crate::arith::fqpoly::FqPoly::new(&prime, coeffs);
            if poly.is_irreducible() {
                let modulus = poly.coeffs().iter().map(|c| c.0).collect();
                return Ok(Self::build(p, e, modulus));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Extension of `F_p` of the given degree with an explicit monic modulus.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime_u64(p) || modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidFieldOrder(p));
        }
        let degree = (modulus.len() - 1) as u32;
        if degree == 1 {
            return Ok(Self::build(p, 1, Vec::new()));
        }
        Ok(Self::build(p, degree, modulus))
    }

    fn build(p: u64, degree: u32, modulus: Vec<u64>) -> Self {
        let order = p.pow(degree);
        let mut f = FiniteField {
            inner: Arc::new(Inner {
                p,
                degree,
                order,
                modulus,
                mul_table: None,
                inv_table: None,
            }),
        };
        if order <= TABLE_LIMIT && degree > 1 {
            let n = order as usize;
            let mut mul = vec![0u32; n * n];
            for a in 0..order {
                for b in 0..order {
                    mul[a as usize * n + b as usize] =
                        f.mul_slow(FqElem(a), FqElem(b)).0 as u32;
                }
            }
            let mut inv = vec![0u32; n];
            for a in 1..order {
                for b in 1..order {
                    if mul[a as usize * n + b as usize] == 1 {
                        inv[a as usize] = b as u32;
                        break;
                    }
                }
            }
            let inner = Arc::get_mut(&mut f.inner).expect("fresh arc");
            inner.mul_table = Some(mul);
            inner.inv_table = Some(inv);
        }
        f
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.degree
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.degree == 1
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        FqElem::ONE
    }

    /// Reduces an integer into the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        let p = self.inner.p as i64;
        FqElem(n.rem_euclid(p) as u64)
    }

    /// Packed element from its integer code; errors if out of range.
    pub fn elem(&self, code: u64) -> Result<FqElem> {
        if code < self.inner.order {
            Ok(FqElem(code))
        } else {
            Err(Error::Parse(format!(
                "{code} is not an element code of GF({})",
                self.inner.order
            )))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.inner.order).map(FqElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FqElem> {
        (1..self.inner.order).map(FqElem)
    }

    fn digits(&self, a: FqElem) -> Vec<u64> {
        let p = self.inner.p;
        let mut v = Vec::with_capacity(self.inner.degree as usize);
        let mut c = a.0;
        for _ in 0..self.inner.degree {
            v.push(c % p);
            c /= p;
        }
        v
    }

    fn pack(&self, digits: &[u64]) -> FqElem {
        let p = self.inner.p;
        FqElem(digits.iter().rev().fold(0, |acc, &d| acc * p + d))
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.inner.p;
        if self.inner.degree == 1 {
            return FqElem((a.0 + b.0) % p);
        }
        if p == 2 {
            return FqElem(a.0 ^ b.0);
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
        self.pack(&s)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        let p = self.inner.p;
        if self.inner.degree == 1 {
            return FqElem((p - a.0) % p);
        }
        if p == 2 {
            return a;
        }
        let s: Vec<u64> = self.digits(a).iter().map(|x| (p - x) % p).collect();
        self.pack(&s)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.inner.degree == 1 {
            let p = self.inner.p as u128;
            return FqElem(((a.0 as u128 * b.0 as u128) % p) as u64);
        }
        if let Some(t) = &self.inner.mul_table {
            return FqElem(t[(a.0 * self.inner.order + b.0) as usize] as u64);
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.inner.p as u128;
        let e = self.inner.degree as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u128; 2 * e];
        for (i, x) in da.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + *x as u128 * *y as u128) % p;
            }
        }
        let m = &self.inner.modulus;
        for top in (e..2 * e).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for k in 0..e {
                let sub = c * m[k] as u128 % p;
                let idx = top - e + k;
                prod[idx] = (prod[idx] + p - sub) % p;
            }
            prod[top] = 0;
        }
        let digits: Vec<u64> = prod[..e].iter().map(|&x| x as u64).collect();
        self.pack(&digits)
    }

    pub fn pow(&self, a: FqElem, mut exp: u64) -> FqElem {
        let mut base = a;
        let mut acc = FqElem::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        if a.is_zero() {
            return None;
        }
        if let Some(t) = &self.inner.inv_table {
            return Some(FqElem(t[a.0 as usize] as u64));
        }
        Some(self.pow(a, self.inner.order - 2))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Option<FqElem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// Least generator of the multiplicative group (by packed code).
    pub fn primitive_element(&self) -> FqElem {
        let n = self.inner.order - 1;
        let mut factors = Vec::new();
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        self.nonzero_elements()
            .find(|&g| factors.iter().all(|&f| self.pow(g, n / f) != FqElem::ONE))
            .expect("multiplicative group is cyclic")
    }

    /// Elements generating the field additively over `F_p` (the basis `x^i`).
    pub fn additive_basis(&self) -> Vec<FqElem> {
        (0..self.inner.degree)
            .map(|i| FqElem(self.inner.p.pow(i)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert!(FiniteField::new(12).is_err());
    }

    #[test]
    fn field_axioms_small_fields() {
        for q in [2u64, 3, 4, 5, 8, 9] {
            let f = FiniteField::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FqElem::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn gf4_uses_least_irreducible() {
        let f = FiniteField::new(4).unwrap();
        // x^2 + x + 1 is the only irreducible quadratic over F_2.
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let f9 = FiniteField::new(9).unwrap();
        // x^2 + 1 is the least irreducible quadratic over F_3.
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn primitive_element_has_full_order() {
        for q in [2u64, 3, 4, 7, 9, 16] {
            let f = FiniteField::new(q).unwrap();
            let g = f.primitive_element();
            let mut seen = std::collections::HashSet::new();
            let mut x = FqElem::ONE;
            for _ in 0..q - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u64, q - 1);
        }
    }

    #[test]
    fn untabled_extension_matches_tabled() {
        // GF(2^11) exceeds the table limit and exercises the slow path.
        let big = FiniteField::new(2048).unwrap();
        let a = FqElem(1234);
        assert_eq!(big.mul(a, big.inv(a).unwrap()), FqElem::ONE);
        assert_eq!(big.pow(a, 2047), FqElem::ONE);
    }
}
