//! Exact rational functions in `F_q(t)`, viewed inside `K_inf = F_q((1/t))`.

use std::fmt;

use super::field::FiniteField;
use super::fqpoly::FqPoly;
use crate::error::{Error, Result};

/// `num / den` in lowest terms with `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: FqPoly,
    den: FqPoly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl RatFunc {
    pub fn new(num: FqPoly, den: FqPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial("denominator".into()));
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading();
        let inv = num.field().inv(lc).expect("nonzero leading coefficient");
        Ok(RatFunc {
            num: num.scale(inv),
            den: den.scale(inv),
        })
    }

    pub fn from_poly(p: FqPoly) -> Self {
        let one = FqPoly::one(p.field());
        RatFunc { num: p, den: one }
    }

    pub fn zero(field: &FiniteField) -> Self {
        Self::from_poly(FqPoly::zero(field))
    }

    pub fn one(field: &FiniteField) -> Self {
        Self::from_poly(FqPoly::one(field))
    }

    /// `pi^k = t^{-k}`.
    pub fn pi_pow(field: &FiniteField, k: i64) -> Self {
        let one = FqPoly::one(field);
        if k <= 0 {
            Self::from_poly(one.shift((-k) as usize))
        } else {
            RatFunc {
                num: one.clone(),
                den: one.shift(k as usize),
            }
        }
    }

    pub fn num(&self) -> &FqPoly {
        &self.num
    }

    pub fn den(&self) -> &FqPoly {
        &self.den
    }

    pub fn field(&self) -> &FiniteField {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// Valuation at infinity, `deg den - deg num`; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        self.num
            .degree()
            .map(|d| self.den.deg_i64() - d as i64)
    }

    pub fn add(&self, o: &Self) -> Self {
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        Self::new(num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Singular);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Polynomial part of the expansion at infinity (terms `t^j`, `j >= 0`).
    pub fn poly_part(&self) -> FqPoly {
        self.num.div_rem(&self.den).0
    }

    /// For `u` in `K_inf`, the polynomial `P` with
    /// `u mod pi^k O_inf = P * t^{1-k}`, i.e. `P = polypart(u t^{k-1})`.
    pub fn truncation_poly(&self, k: i64) -> FqPoly {
        let s = k - 1;
        if s >= 0 {
            self.num.shift(s as usize).div_rem(&self.den).0
        } else {
            self.num.div_rem(&self.den.shift((-s) as usize)).0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_and_truncation() {
        let f = FiniteField::new(2).unwrap();
        let t = FqPoly::t(&f);
        let one = FqPoly::one(&f);
        // 1/(t+1) = pi + pi^2 + ...
        let u = RatFunc::new(one.clone(), &t + &one).unwrap();
        assert_eq!(u.valuation(), Some(1));
        // mod pi^3: pi + pi^2 = t^{-2}(t + 1)
        assert_eq!(u.truncation_poly(3), &t + &one);
        assert!(u.truncation_poly(1).is_zero());
        let p = RatFunc::from_poly(&t * &t);
        assert_eq!(p.valuation(), Some(-2));
        // t^2 mod pi^{-1}: only the t^2 term survives, t^2 = P t^{2}
        assert_eq!(p.truncation_poly(-1), one);
    }
}
