//! Dense matrices over a [`Field`] with exact Gaussian elimination.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix from integer rows. Handy in tests and fixtures.
    pub fn from_i64_rows(field: Field, rows: &[&[i64]], cols: usize) -> Self {
        Self::from_fn(field, rows.len(), cols, |r, c| field.from_i64(rows[r][c]))
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!("row of length {} in a {cols}-column matrix", row.len())));
            }
            data.extend(row);
        }
        Ok(Matrix { field, rows: n, cols, data })
    }

    /// A single column built from the given entries.
    pub fn column(field: Field, entries: Vec<Scalar>) -> Self {
        let rows = entries.len();
        Matrix { field, rows, cols: 1, data: entries }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Matrix {
        Matrix::from_fn(self.field, self.rows, 1, |r, _| self[(r, c)].clone())
    }

    pub fn col_vec(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |r, c| self[(r, cols[c])].clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), self.cols, |r, c| self[(rows[r], c)].clone())
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)].clone();
            }
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn add_assign(&mut self, other: &Matrix) {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a = &*a + b;
            }
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols { self[(r, c)].clone() } else { other[(r, c - self.cols)].clone() }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.field, self.rows * other.rows, self.cols * other.cols, |r, c| {
            let a = &self[(r / other.rows, c / other.cols)];
            if a.is_zero() {
                return self.field.zero();
            }
            a * &other[(r % other.rows, c % other.cols)]
        })
    }

    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv().expect("pivot is nonzero");
            for c in col..m.cols {
                m[(row, c)] = &m[(row, c)] * &inv;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &m[(row, c)];
                    m[(r, c)] = &m[(r, c)] - &delta;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Columns form a basis of `{v : self·v = 0}`, one per free variable.
    pub fn nullspace(&self) -> Matrix {
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = self.field.one();
            for (r, &p) in pivots.iter().enumerate() {
                basis[(p, k)] = -&reduced[(r, f)];
            }
        }
        basis
    }

    /// Some `x` with `self·x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} equations but right side has {} rows",
                self.rows, b.rows
            )));
        }
        let Echelon { reduced, pivots } = self.hstack(b).echelon();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x[(p, c)] = reduced[(r, self.cols + c)].clone();
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let Echelon { reduced, pivots } = self.hstack(&Matrix::identity(self.field, n)).echelon();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(reduced.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Indices of a maximal independent set of columns, chosen greedily left to right.
    pub fn independent_cols(&self) -> Vec<usize> {
        self.echelon().pivots
    }

    /// A basis (as columns) of the column space.
    pub fn column_basis(&self) -> Matrix {
        self.select_cols(&self.independent_cols())
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| &acc + &self[(i, i)])
    }

    pub fn pow(&self, mut e: u32) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch {:?} * {:?}", self.shape(), rhs.shape());
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    out[(r, c)] = &out[(r, c)] + &t;
                }
            }
        }
        out
    }
}

/// Splitting of an ambient space `k^n` by a subspace.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    /// `q × n`; its kernel is exactly the subspace.
    pub projection: Matrix,
    /// `n × q`; standard basis vectors spanning a complement.
    pub lift: Matrix,
}

impl QuotientBasis {
    pub fn dim(&self) -> usize {
        self.lift.cols()
    }
}

/// Quotient of `k^ambient_dim` by the column span of `subspace`.
pub fn quotient_basis(field: Field, ambient_dim: usize, subspace: &Matrix) -> QuotientBasis {
    assert_eq!(subspace.rows(), ambient_dim, "subspace columns must live in the ambient space");
    let k = subspace.cols();
    let aug = subspace.hstack(&Matrix::identity(field, ambient_dim));
    let pivots = aug.independent_cols();
    let sub_cols: Vec<usize> = pivots.iter().copied().filter(|&p| p < k).collect();
    let comp: Vec<usize> = pivots.iter().copied().filter(|&p| p >= k).map(|p| p - k).collect();
    let lift = Matrix::identity(field, ambient_dim).select_cols(&comp);
    let frame = subspace.select_cols(&sub_cols).hstack(&lift);
    let inv = frame.inverse().expect("subspace basis plus complement is a frame");
    let projection = inv.block(sub_cols.len(), 0, comp.len(), ambient_dim);
    QuotientBasis { projection, lift }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64_rows(Q, rows, rows.first().map_or(0, |r| r.len()))
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(Q, 2).rank(), 2);
        assert_eq!(Matrix::zeros(Q, 2, 2).rank(), 0);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(Matrix::identity(Q, 3).nullspace().cols(), 0);
        assert_eq!(Matrix::zeros(Q, 2, 3).nullspace().cols(), 3);
        let n = m(&[&[1, 1]]).nullspace();
        assert_eq!(n.cols(), 1);
        assert_eq!(&n[(0, 0)] + &n[(1, 0)], Q.zero());
        assert!(!n[(0, 0)].is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = m(&[&[3, 1], &[-2, 5]]);
        assert_eq!(Matrix::identity(Q, 2).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Matrix::zeros(Q, 2, 2).solve(&b).unwrap(), None);
        let x = m(&[&[2]]).solve(&m(&[&[1]])).unwrap().unwrap();
        assert_eq!(x[(0, 0)], Q.parse_scalar("1/2").unwrap());
        assert!(m(&[&[1, 2]]).solve(&m(&[&[1], &[1]])).is_err());
    }

    #[test]
    fn quotient_examples() {
        let full = quotient_basis(Q, 2, &Matrix::identity(Q, 2));
        assert_eq!(full.dim(), 0);
        let none = quotient_basis(Q, 3, &Matrix::zeros(Q, 3, 0));
        assert_eq!(none.projection, Matrix::identity(Q, 3));
        let line = quotient_basis(Q, 2, &m(&[&[1], &[0]]));
        assert_eq!(line.dim(), 1);
        assert!((&line.projection * &m(&[&[1], &[0]])).is_zero());
        assert_eq!(&line.projection * &line.lift, Matrix::identity(Q, 1));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(Q, 2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = m(&[&[1, 2]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k.shape(), (2, 4));
        assert_eq!(k, m(&[&[0, 1, 0, 2], &[1, 0, 2, 0]]));
    }
}
