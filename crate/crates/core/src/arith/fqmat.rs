//! Dense matrices over a finite field, used for reductions modulo `l`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::field::{FiniteField, FqElem};
use super::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqMatrix {
    field: FiniteField,
    rows: usize,
    cols: usize,
    data: Vec<FqElem>,
}

impl FqMatrix {
    pub fn zeros(field: &FiniteField, rows: usize, cols: usize) -> Self {
        FqMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![FqElem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &FiniteField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Reduction of an integer matrix into the prime subfield.
    pub fn from_int(field: &FiniteField, m: &IntMatrix) -> Self {
        let p = BigInt::from(field.characteristic());
        let mut out = Self::zeros(field, m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = m.get(r, c).mod_floor(&p).to_u64().expect("residue");
                out.set(r, c, FqElem(v));
            }
        }
        out
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FqElem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FqElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn col(&self, c: usize) -> Vec<FqElem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn from_cols(field: &FiniteField, rows: usize, cols: &[Vec<FqElem>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn mul(&self, o: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, o.rows, "matrix product dimensions");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = f.add(out.get(i, j), f.mul(a, o.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// `self - c I`
    pub fn sub_scalar(&self, c: FqElem) -> FqMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.set(i, i, self.field.sub(self.get(i, i), c));
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Row reduction in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (m, n) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for k in 0..n {
                    self.data.swap(p * n + k, r * n + k);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for k in 0..n {
                self.set(r, k, f.mul(self.get(r, k), inv));
            }
            for i in 0..m {
                let fac = self.get(i, c);
                if i == r || fac.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let v = f.sub(self.get(i, k), f.mul(fac, self.get(r, k)));
                    self.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis of the right kernel, as columns.
    pub fn kernel(&self) -> FqMatrix {
        let f = &self.field;
        let mut a = self.clone();
        let pivots = a.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, f.one());
            for (i, &p) in pivots.iter().enumerate() {
                k.set(p, j, f.neg(a.get(i, fc)));
            }
        }
        k
    }

    /// Column-space basis of `[self | o]` intersected: returns a basis (as
    /// columns) of `span(self) ∩ span(o)`, both given by independent columns.
    pub fn intersect_spans(&self, o: &FqMatrix) -> FqMatrix {
        let f = &self.field;
        // solve self x = o y  <=>  [self | -o] (x; y) = 0
        let mut big = Self::zeros(f, self.rows, self.cols + o.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                big.set(r, c, self.get(r, c));
            }
            for c in 0..o.cols {
                big.set(r, self.cols + c, f.neg(o.get(r, c)));
            }
        }
        let ker = big.kernel();
        let xs = ker.submatrix_rows(0, self.cols);
        let inter = self.mul(&xs);
        inter.column_basis()
    }

    fn submatrix_rows(&self, start: usize, len: usize) -> FqMatrix {
        let mut m = Self::zeros(&self.field, len, self.cols);
        for r in 0..len {
            for c in 0..self.cols {
                m.set(r, c, self.get(start + r, c));
            }
        }
        m
    }

    /// Independent columns spanning the column space.
    pub fn column_basis(&self) -> FqMatrix {
        let mut t = self.transpose();
        let piv = t.rref_in_place();
        let rows: Vec<Vec<FqElem>> = (0..piv.len())
            .map(|r| (0..t.cols).map(|c| t.get(r, c)).collect())
            .collect();
        Self::from_cols(&self.field, self.rows, &rows)
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_intersection() {
        let f = FiniteField::new(5).unwrap();
        let m = FqMatrix::from_int(&f, &IntMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]));
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert!(m.mul(&k).is_zero());
        let a = FqMatrix::from_int(&f, &IntMatrix::from_i64_rows(&[vec![1, 0], vec![0, 1], vec![0, 0]]));
        let b = FqMatrix::from_int(&f, &IntMatrix::from_i64_rows(&[vec![1, 0], vec![1, 0], vec![0, 1]]));
        let i = a.intersect_spans(&b);
        assert_eq!(i.cols(), 1);
    }
}
