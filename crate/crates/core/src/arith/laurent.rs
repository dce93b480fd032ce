//! Truncated Laurent series in `pi = 1/t` with explicit absolute precision.

use super::field::{FiniteField, FqElem};
use super::fqpoly::FqPoly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// `sum_{i} coeffs[i] pi^{valuation + i}`, known modulo `pi^precision`.
///
/// A value whose known coefficients all vanish is stored with empty
/// `coeffs` and `valuation == precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTail {
    field: FiniteField,
    valuation: i64,
    coeffs: Vec<FqElem>,
    precision: i64,
}

impl LaurentTail {
    fn normalize(field: &FiniteField, start: i64, mut coeffs: Vec<FqElem>, precision: i64) -> Self {
        let known = (precision - start).max(0) as usize;
        coeffs.truncate(known);
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => LaurentTail {
                field: field.clone(),
                valuation: precision,
                coeffs: Vec::new(),
                precision,
            },
            Some(i) => {
                let mut c = coeffs.split_off(i);
                while c.last().is_some_and(|x| x.is_zero()) {
                    c.pop();
                }
                LaurentTail {
                    field: field.clone(),
                    valuation: start + i as i64,
                    coeffs: c,
                    precision,
                }
            }
        }
    }

    pub fn new(field: &FiniteField, valuation: i64, coeffs: Vec<FqElem>, precision: i64) -> Self {
        Self::normalize(field, valuation, coeffs, precision)
    }

    /// Exact zero known to the given precision.
    pub fn zero(field: &FiniteField, precision: i64) -> Self {
        Self::normalize(field, precision, Vec::new(), precision)
    }

    pub fn pi_pow(field: &FiniteField, k: i64, precision: i64) -> Self {
        Self::normalize(field, k, vec![field.one()], precision)
    }

    /// Expansion of a rational function, known modulo `pi^precision`.
    pub fn from_ratfunc(u: &RatFunc, precision: i64) -> Self {
        let field = u.field().clone();
        let Some(v) = u.valuation() else {
            return Self::zero(&field, precision);
        };
        if v >= precision {
            return Self::zero(&field, precision);
        }
        // u = pi^v n(pi) / d(pi) with reversed coefficient lists
        let rev = |p: &FqPoly| -> Vec<FqElem> { p.coeffs().iter().rev().copied().collect() };
        let n = rev(u.num());
        let d = rev(u.den());
        let terms = (precision - v) as usize;
        let inv_d0 = field.inv(d[0]).expect("nonzero constant term");
        let mut out = Vec::with_capacity(terms);
        let mut rem: Vec<FqElem> = (0..terms)
            .map(|i| n.get(i).copied().unwrap_or(FqElem::ZERO))
            .collect();
        for i in 0..terms {
            let c = field.mul(rem[i], inv_d0);
            out.push(c);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.iter().enumerate().skip(1) {
                if i + j < terms {
                    rem[i + j] = field.sub(rem[i + j], field.mul(c, *dj));
                }
            }
        }
        Self::normalize(&field, v, out, precision)
    }

    pub fn from_poly(p: &FqPoly, precision: i64) -> Self {
        Self::from_ratfunc(&RatFunc::from_poly(p.clone()), precision)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn is_zero_at_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation; errors when every known coefficient vanishes.
    pub fn valuation(&self) -> Result<i64> {
        if self.coeffs.is_empty() {
            Err(Error::PrecisionExhausted {
                needed: self.precision + 1,
                available: self.precision,
            })
        } else {
            Ok(self.valuation)
        }
    }

    /// Coefficient of `pi^j`; errors beyond the known precision.
    pub fn coeff(&self, j: i64) -> Result<FqElem> {
        if j >= self.precision {
            return Err(Error::PrecisionExhausted {
                needed: j + 1,
                available: self.precision,
            });
        }
        if j < self.valuation {
            return Ok(FqElem::ZERO);
        }
        Ok(self
            .coeffs
            .get((j - self.valuation) as usize)
            .copied()
            .unwrap_or(FqElem::ZERO))
    }

    fn dense(&self, start: i64, end: i64) -> Vec<FqElem> {
        (start..end)
            .map(|j| self.coeff(j).unwrap_or(FqElem::ZERO))
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        let prec = self.precision.min(o.precision);
        let start = self.valuation.min(o.valuation).min(prec);
        let a = self.dense(start, prec);
        let b = o.dense(start, prec);
        let c = a.iter().zip(&b).map(|(x, y)| f.add(*x, *y)).collect();
        Self::normalize(f, start, c, prec)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        let c = self.coeffs.iter().map(|x| f.neg(*x)).collect();
        Self::normalize(f, self.valuation, c, self.precision)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = &self.field;
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            let prec = if self.coeffs.is_empty() && o.coeffs.is_empty() {
                self.precision + o.precision
            } else if self.coeffs.is_empty() {
                self.precision + o.valuation
            } else {
                o.precision + self.valuation
            };
            return Self::zero(f, prec);
        }
        let prec = (self.valuation + o.precision).min(o.valuation + self.precision);
        let start = self.valuation + o.valuation;
        let terms = (prec - start).max(0) as usize;
        let mut c = vec![FqElem::ZERO; terms];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in o.coeffs.iter().enumerate() {
                if i + j < terms {
                    c[i + j] = f.add(c[i + j], f.mul(*x, *y));
                }
            }
        }
        Self::normalize(f, start, c, prec)
    }

    /// Multiplicative inverse; relative precision is preserved.
    pub fn inv(&self) -> Result<Self> {
        let v = self.valuation()?;
        let f = &self.field;
        let rel = (self.precision - v) as usize;
        let a = self.dense(v, self.precision);
        let inv0 = f.inv(a[0]).expect("leading coefficient nonzero");
        let mut b = vec![FqElem::ZERO; rel];
        for i in 0..rel {
            let mut s = if i == 0 { f.one() } else { FqElem::ZERO };
            for j in 1..=i {
                s = f.sub(s, f.mul(a[j], b[i - j]));
            }
            b[i] = f.mul(s, inv0);
        }
        Ok(Self::normalize(f, -v, b, -v + rel as i64))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// The polynomial `P` with `self mod pi^k O = P t^{1-k}`.
    pub fn truncation_poly(&self, k: i64) -> Result<FqPoly> {
        if k > self.precision {
            return Err(Error::PrecisionExhausted {
                needed: k,
                available: self.precision,
            });
        }
        // coefficient of pi^j goes to t^{k-1-j}
        let lo = self.valuation.min(k);
        let mut c = vec![FqElem::ZERO; (k - lo).max(0) as usize];
        for j in lo..k {
            c[(k - 1 - j) as usize] = self.coeff(j)?;
        }
        Ok(FqPoly::new(&self.field, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_and_inverse() {
        let f = FiniteField::new(3).unwrap();
        let t = FqPoly::t(&f);
        let one = FqPoly::one(&f);
        let u = RatFunc::new(one.clone(), &t + &one).unwrap();
        let s = LaurentTail::from_ratfunc(&u, 6);
        assert_eq!(s.valuation().unwrap(), 1);
        // 1/(t+1) = pi - pi^2 + pi^3 - ...
        assert_eq!(s.coeff(2).unwrap(), f.neg(f.one()));
        let inv = s.inv().unwrap();
        // t + 1 = pi^{-1} + 1
        assert_eq!(inv.valuation().unwrap(), -1);
        assert_eq!(inv.coeff(0).unwrap(), f.one());
        assert_eq!(inv.coeff(1).unwrap(), FqElem::ZERO);
        assert!(inv.coeff(inv.precision()).is_err());
        let prod = s.mul(&inv);
        assert_eq!(prod.valuation().unwrap(), 0);
        assert_eq!(prod.truncation_poly(prod.precision()).unwrap().degree(), Some((prod.precision() - 1) as usize));
    }

    #[test]
    fn precision_exhaustion() {
        let f = FiniteField::new(2).unwrap();
        let z = LaurentTail::zero(&f, 4);
        assert!(z.valuation().is_err());
        assert!(z.inv().is_err());
        let a = LaurentTail::pi_pow(&f, 2, 5);
        assert!(a.truncation_poly(6).is_err());
        assert!(a.truncation_poly(5).is_ok());
    }
}
