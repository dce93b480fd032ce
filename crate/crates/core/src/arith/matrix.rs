//! Dense exact matrices over `Z` and `Q`.
//!
//! Column-vector convention throughout: an operator matrix `M` sends the
//! coordinate column `x` to `M x`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::intpoly::IntPoly;
use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.data[r * self.cols + c].to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// `rows x cols` matrix with the given column vectors.
    pub fn from_cols(rows: usize, cols: Vec<Vec<T>>) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<T> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack rows");
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block(blocks: &[Vec<&Self>]) -> Self {
        let mut out: Option<Self> = None;
        for row in blocks {
            let mut acc = row[0].clone();
            for b in &row[1..] {
                acc = acc.hstack(b);
            }
            out = Some(match out {
                None => acc,
                Some(o) => o.vstack(&acc),
            });
        }
        out.unwrap_or_else(|| Self::zeros(0, 0))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn map<U: Clone + Zero>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + for<'a> Add<&'a T, Output = T> + for<'a> Mul<&'a T, Output = T>,
{
    pub fn scale(&self, s: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "mul_vec length");
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(T::zero(), |acc, c| acc + &(self.get(r, c).clone() * &v[c]))
            })
            .collect()
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i))
    }
}

impl<'a, T> Mul<&'a Matrix<T>> for &'a Matrix<T>
where
    T: Clone + Zero + for<'b> Add<&'b T, Output = T> + for<'b> Mul<&'b T, Output = T>,
{
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimensions");
        let mut out = Matrix::<T>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cur = out.get(i, j).clone() + &(a.clone() * rhs.get(k, j));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }
}

impl<'a, T> Add<&'a Matrix<T>> for &'a Matrix<T>
where
    T: Clone + Zero + for<'b> Add<&'b T, Output = T>,
{
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        }
    }
}

impl<'a, T> Sub<&'a Matrix<T>> for &'a Matrix<T>
where
    T: Clone + Zero + for<'b> Sub<&'b T, Output = T>,
{
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        }
    }
}

impl<T: Clone + Zero + Neg<Output = T>> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

// ---------------------------------------------------------------------------
// integer matrices

/// Smith normal form `left * m * right = diag(diag)` with unimodular
/// `left`, `right` and `d_1 | d_2 | ...`, all `d_i >= 0`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// Elementary divisors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn to_rat(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        self.row_vecs()
            .into_iter()
            .map(|r| {
                r.iter()
                    .map(|x| i64::try_from(x).expect("entry fits in i64"))
                    .collect()
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(dst, c) + k * self.get(src, c);
            self.set(dst, c, v);
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, dst) + k * self.get(r, src);
            self.set(r, dst, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c);
            self.set(r, c, v);
        }
    }

    /// Smith normal form with transforms, by repeated Euclidean pivoting.
    pub fn smith_normal_form(&self) -> Snf {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut left = IntMatrix::identity(m);
        let mut right = IntMatrix::identity(n);
        let mut t = 0;
        while t < m.min(n) {
            // pivot: nonzero entry of least absolute value in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let v = a.get(i, j);
                    if v.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);
            loop {
                let mut clean = true;
                // clear column t
                for i in t + 1..m {
                    if a.get(i, t).is_zero() {
                        continue;
                    }
                    let q = a.get(i, t).div_floor(a.get(t, t));
                    let negq = -q;
                    a.add_row_multiple(i, t, &negq);
                    left.add_row_multiple(i, t, &negq);
                    if !a.get(i, t).is_zero() {
                        clean = false;
                    }
                }
                // clear row t
                for j in t + 1..n {
                    if a.get(t, j).is_zero() {
                        continue;
                    }
                    let q = a.get(t, j).div_floor(a.get(t, t));
                    let negq = -q;
                    a.add_col_multiple(j, t, &negq);
                    right.add_col_multiple(j, t, &negq);
                    if !a.get(t, j).is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    // divisibility of the remaining block
                    let piv = a.get(t, t).clone();
                    let bad = (t + 1..m)
                        .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                        .find(|&(i, j)| !a.get(i, j).is_multiple_of(&piv));
                    match bad {
                        None => break,
                        Some((i, _)) => {
                            let one = BigInt::one();
                            a.add_row_multiple(t, i, &one);
                            left.add_row_multiple(t, i, &one);
                        }
                    }
                }
                // move the smallest nonzero entry of row/col t to the pivot
                let mut best = (t, t);
                for i in t..m {
                    let v = a.get(i, t);
                    if !v.is_zero() && v.abs() < a.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t..n {
                    let v = a.get(t, j);
                    if !v.is_zero() && v.abs() < a.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap_rows(t, best.0);
                    left.swap_rows(t, best.0);
                }
                if best.1 != t {
                    a.swap_cols(t, best.1);
                    right.swap_cols(t, best.1);
                }
            }
            if a.get(t, t).is_negative() {
                a.negate_row(t);
                left.negate_row(t);
            }
            t += 1;
        }
        let diag = (0..m.min(n)).map(|i| a.get(i, i).clone()).collect();
        Snf { diag, left, right }
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    pub fn rank(&self) -> usize {
        self.to_rat().rank()
    }

    /// Characteristic polynomial `det(xI - m)` via Berkowitz (division free).
    pub fn char_poly(&self) -> Result<IntPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(IntPoly::one());
        }
        // vect holds the coefficients (descending) of the char poly of the
        // leading r x r block, up to sign conventions fixed at the end.
        let mut vect: Vec<BigInt> = vec![BigInt::one(), -self.get(0, 0)];
        for r in 1..n {
            // partition: a11 = m[r][r], row R = m[r][0..r], col C = m[0..r][r], A = leading block
            let col: Vec<BigInt> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let row: Vec<BigInt> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let a11 = self.get(r, r).clone();
            // Toeplitz column: 1, -a11, -R C, -R A C, -R A^2 C, ...
            let mut toep = vec![BigInt::one(), -a11];
            let mut v = col.clone();
            for _ in 0..r {
                let rc: BigInt = row.iter().zip(&v).map(|(x, y)| x * y).sum();
                toep.push(-rc);
                // v = A v
                v = (0..r)
                    .map(|i| (0..r).map(|j| self.get(i, j) * &v[j]).sum())
                    .collect();
            }
            // new vect = T * vect where T is (r+2) x (r+1) lower Toeplitz
            let mut next = vec![BigInt::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, vj) in vect.iter().enumerate() {
                    if i >= j && i - j < toep.len() {
                        *slot += &toep[i - j] * vj;
                    }
                }
            }
            vect = next;
        }
        let mut asc: Vec<BigInt> = vect;
        asc.reverse();
        Ok(IntPoly::new(asc))
    }

    /// Evaluates a polynomial at a square matrix (Horner).
    pub fn eval_poly(&self, p: &IntPoly) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut acc = IntMatrix::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &IntMatrix::identity(n).scale(c);
        }
        Ok(acc)
    }

    /// Basis (as columns) of the integer kernel `{x in Z^cols : m x = 0}`,
    /// saturated in `Z^cols`.
    pub fn integer_kernel(&self) -> IntMatrix {
        let snf = self.smith_normal_form();
        let r = snf.rank();
        let idx: Vec<usize> = (r..self.cols).collect();
        let rows: Vec<usize> = (0..self.cols).collect();
        snf.right.submatrix(&rows, &idx)
    }

    /// Basis (as rows) of the saturation in `Z^cols` of the row span.
    pub fn row_saturation(&self) -> IntMatrix {
        let snf = self.smith_normal_form();
        let r = snf.rank();
        // self = left^-1 D right^-1; rows of D right^-1 span the row space
        let rinv = snf.right.unimodular_inverse();
        let rows: Vec<usize> = (0..r).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        rinv.submatrix(&rows, &cols)
    }

    /// Inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> IntMatrix {
        let inv = self.to_rat().inverse().expect("unimodular matrix is invertible");
        inv.map(|x| {
            assert!(x.is_integer(), "matrix is not unimodular");
            x.to_integer()
        })
    }

    /// Solves `self * X = rhs` over `Q` and returns `X` if it is integral.
    pub fn solve_integral(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        let x = self.to_rat().solve(&rhs.to_rat())?;
        if x.data.iter().all(|v| v.is_integer()) {
            Ok(x.map(|v| v.to_integer()))
        } else {
            Err(Error::SolveFailed("solution is not integral".into()))
        }
    }
}

// ---------------------------------------------------------------------------
// rational matrices

impl RatMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        m.to_rat()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
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
            let inv = self.get(r, c).recip();
            for k in 0..n {
                let v = self.get(r, k) * &inv;
                self.set(r, k, v);
            }
            for i in 0..m {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for k in 0..n {
                    let v = self.get(i, k) - &f * self.get(r, k);
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
    pub fn kernel(&self) -> RatMatrix {
        let mut a = self.clone();
        let pivots = a.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = RatMatrix::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, BigRational::one());
            for (i, &p) in pivots.iter().enumerate() {
                k.set(p, j, -a.get(i, f).clone());
            }
        }
        k
    }

    /// Solves `self * X = rhs`; errors if inconsistent or not unique.
    pub fn solve(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if rhs.rows != self.rows {
            return Err(Error::Dimension("solve: row counts differ".into()));
        }
        let mut aug = self.hstack(rhs);
        let pivots = aug.rref_in_place();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::SolveFailed("inconsistent system".into()));
        }
        if pivots.len() < self.cols {
            return Err(Error::SolveFailed("solution not unique".into()));
        }
        let mut x = RatMatrix::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, aug.get(i, self.cols + j).clone());
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        self.solve(&RatMatrix::identity(self.rows))
            .map_err(|_| Error::Singular)
    }

    pub fn det(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != c {
                for k in 0..n {
                    a.data.swap(p * n + k, c * n + k);
                }
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                let f = a.get(i, c) / &piv;
                if f.is_zero() {
                    continue;
                }
                for k in c..n {
                    let v = a.get(i, k) - &f * a.get(c, k);
                    a.set(i, k, v);
                }
            }
        }
        Ok(det)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        self.is_integral().then(|| self.map(|x| x.to_integer()))
    }

    /// Least common denominator of all entries.
    pub fn common_denominator(&self) -> BigInt {
        self.data
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }
}

/// JSON-friendly integer matrix: row-major nested arrays.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct IntMatrixJson(pub Vec<Vec<String>>);

impl From<&IntMatrix> for IntMatrixJson {
    fn from(m: &IntMatrix) -> Self {
        IntMatrixJson(
            m.row_vecs()
                .into_iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn check_snf(m: &IntMatrix) -> Snf {
        let s = m.smith_normal_form();
        let d = &(&s.left * m) * &s.right;
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i == j {
                    assert_eq!(d.get(i, j), &s.diag[i]);
                } else {
                    assert!(d.get(i, j).is_zero());
                }
            }
        }
        assert!(s.left.det().unwrap().abs().is_one());
        assert!(s.right.det().unwrap().abs().is_one());
        for w in s.diag.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            } else {
                assert!(w[1].is_zero());
            }
        }
        assert!(s.diag.iter().all(|d| !d.is_negative()));
        s
    }

    #[test]
    fn snf_identity_and_small_cases() {
        let s = check_snf(&im(&[vec![1, 0], vec![0, 1]]));
        assert_eq!(s.diag, vec![BigInt::from(1), BigInt::from(1)]);
        let s = check_snf(&im(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(4)]);
        let s = check_snf(&im(&[vec![0]]));
        assert_eq!(s.diag, vec![BigInt::from(0)]);
    }

    #[test]
    fn snf_rectangular() {
        let s = check_snf(&im(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(
            s.diag,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        check_snf(&im(&[vec![3, 0, 5, 7], vec![0, 0, 0, 0]]));
        check_snf(&im(&[vec![4], vec![6], vec![10]]));
    }

    #[test]
    fn char_poly_examples() {
        let id = IntMatrix::identity(2);
        assert_eq!(id.char_poly().unwrap(), IntPoly::from_i64(&[1, -2, 1]));
        let m = im(&[vec![0, 2], vec![1, 0]]);
        assert_eq!(m.char_poly().unwrap(), IntPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(IntMatrix::zeros(0, 0).char_poly().unwrap(), IntPoly::one());
        assert!(IntMatrix::zeros(2, 3).char_poly().is_err());
    }

    #[test]
    fn char_poly_matches_cofactor_det_3x3() {
        let m = im(&[vec![2, -1, 3], vec![0, 4, 1], vec![5, 2, -2]]);
        let cp = m.char_poly().unwrap();
        // det(xI - m) evaluated at several integers equals the direct determinant
        for x in -3i64..=3 {
            let shifted = &IntMatrix::identity(3).scale(&BigInt::from(x)) - &m;
            assert_eq!(cp.eval(&BigInt::from(x)), shifted.det().unwrap());
        }
    }

    #[test]
    fn rational_kernel_and_solve() {
        let a = im(&[vec![1, 2, 3], vec![2, 4, 6]]).to_rat();
        let k = a.kernel();
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
        let b = im(&[vec![2, 1], vec![1, 1]]).to_rat();
        let inv = b.inverse().unwrap();
        assert_eq!(&b * &inv, RatMatrix::identity(2));
    }

    #[test]
    fn integer_kernel_is_saturated() {
        let a = im(&[vec![2, 4, 6]]);
        let k = a.integer_kernel();
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
        // saturated: the kernel lattice has trivial elementary divisors
        let s = k.smith_normal_form();
        assert!(s.diag.iter().all(|d| d.is_one()));
    }

    #[test]
    fn row_saturation_divides_out_content() {
        let a = im(&[vec![2, 4, 0], vec![0, 3, 3]]);
        let sat = a.row_saturation();
        assert_eq!(sat.rows(), 2);
        // original rows lie in the span of the saturation
        let x = sat.transpose().to_rat().solve(&a.transpose().to_rat());
        assert!(x.is_ok());
        assert!(sat.smith_normal_form().diag.iter().all(|d| d.is_one()));
    }
}
