use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Small dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        let data = rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect();
        IntMatrix { rows: r, cols: c, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<BigInt>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged matrix columns");
            for (i, v) in col.iter().enumerate() {
                m.data[i * c + j] = v.clone();
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lhs = self.get(i, k);
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += lhs * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} against {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(m, x)| m * x).sum()).collect())
    }

    pub fn add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension("matrix sum of different shapes".into()));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v.div_floor(&prev);
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// `det(tI − M)` via Faddeev–LeVerrier; every division is exact over the integers.
    pub fn char_poly(&self) -> Result<IntPolynomial> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("characteristic polynomial of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let id = IntMatrix::identity(n);
        let mut aux = IntMatrix::zero(n, n);
        for k in 1..=n {
            aux = self.checked_mul(&aux)?.add(&id.scale(&coeffs[n - k + 1]))?;
            let tr = self.checked_mul(&aux)?.trace();
            let (q, r) = tr.div_rem(&BigInt::from(k));
            if !r.is_zero() {
                return Err(Error::Internal("inexact Faddeev-LeVerrier step".into()));
            }
            coeffs[n - k] = -q;
        }
        Ok(IntPolynomial::new(coeffs))
    }

    /// Matrix of the induced action on the symmetric square, in the monomial
    /// basis `e_i e_j` (i ≤ j) ordered lexicographically.
    pub fn symmetric_square(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("symmetric square of a non-square matrix".into()));
        }
        let n = self.rows;
        let basis: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let index = |i: usize, j: usize| {
            let (i, j) = if i <= j { (i, j) } else { (j, i) };
            basis.iter().position(|&b| b == (i, j)).expect("basis pair")
        };
        let m = basis.len();
        let mut out = IntMatrix::zero(m, m);
        for (col, &(i, j)) in basis.iter().enumerate() {
            // (M e_i)(M e_j) expanded in the monomial basis
            for r in 0..n {
                for s in 0..n {
                    let c = self.get(r, i) * self.get(s, j);
                    if c.is_zero() {
                        continue;
                    }
                    let row = index(r, s);
                    let cur = out.get(row, col) + c;
                    out.set(row, col, cur);
                }
            }
        }
        Ok(out)
    }

    /// Evaluates `p(M)` by Horner's rule.
    pub fn eval_poly(&self, p: &IntPolynomial) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut acc = IntMatrix::zero(n, n);
        let id = IntMatrix::identity(n);
        for c in p.coeffs().iter().rev() {
            acc = self.checked_mul(&acc)?.add(&id.scale(c))?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix dimensions agree")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// True iff `Mᵀ·G·M = G`.
pub fn is_isometry(m: &IntMatrix, gram: &IntMatrix) -> Result<bool> {
    if !m.is_square() || !gram.is_square() || m.rows() != gram.rows() {
        return Err(Error::Dimension(format!(
            "isometry test of {}x{} against Gram {}x{}",
            m.rows(),
            m.cols(),
            gram.rows(),
            gram.cols()
        )));
    }
    if !gram.is_symmetric() {
        return Err(Error::Dimension("Gram matrix is not symmetric".into()));
    }
    let pulled = m.transpose().checked_mul(gram)?.checked_mul(m)?;
    Ok(pulled == *gram)
}
