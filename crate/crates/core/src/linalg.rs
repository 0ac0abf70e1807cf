//! Dense matrices over exact scalars.
//!
//! [`Matrix`] is generic over its entry type. Field-valued matrices get row
//! reduction, rank, nullspaces and solving; `i64` matrices get a
//! fraction-free (Bareiss) rank so that Weyl group computations never leave
//! the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self.data[r * self.cols + c])?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. `cols` is needed to give a shape to
    /// matrices with no rows.
    pub fn from_rows(cols: usize, rows: &[Vec<T>]) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<T>]) -> Self {
        assert!(cols.iter().all(|c| c.len() == rows), "ragged columns");
        Self::from_fn(rows, cols.len(), |r, c| cols[c][r].clone())
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

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> Vec<T> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |r, c| self.get(idx[r], c).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    /// Horizontal concatenation; all blocks must have `rows` rows.
    pub fn hstack(rows: usize, blocks: &[Matrix<T>]) -> Self {
        assert!(blocks.iter().all(|b| b.rows == rows));
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut acc = 0;
        for b in blocks {
            offsets.push(acc);
            acc += b.cols;
        }
        Self::from_fn(rows, cols, |r, c| {
            let k = offsets.partition_point(|&o| o <= c) - 1;
            // skip over zero-width blocks sharing an offset
            let k = (0..=k)
                .rev()
                .find(|&k| c - offsets[k] < blocks[k].cols)
                .unwrap();
            blocks[k].get(r, c - offsets[k]).clone()
        })
    }

    /// Vertical concatenation; all blocks must have `cols` columns.
    pub fn vstack(cols: usize, blocks: &[Matrix<T>]) -> Self {
        assert!(blocks.iter().all(|b| b.cols == cols));
        Matrix {
            rows: blocks.iter().map(|b| b.rows).sum(),
            cols,
            data: blocks.iter().flat_map(|b| b.data.iter().cloned()).collect(),
        }
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Block-diagonal matrix.
    pub fn block_diag(blocks: &[Matrix<T>]) -> Self {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let idx = r * rhs.cols + c;
                    out.data[idx] = out.data[idx].clone() + a.clone() * rhs.get(k, c).clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(T::zero(), |acc, c| {
                    acc + self.get(r, c).clone() * v[c].clone()
                })
            })
            .collect()
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Matrix<T>) -> Matrix<T> {
        Self::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |r, c| {
            self.get(r / rhs.rows, c / rhs.cols).clone()
                * rhs.get(r % rhs.rows, c % rhs.cols).clone()
        })
    }
}

impl<T: Clone + Zero + One + PartialEq> Matrix<T> {
    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }
}

impl<T> Add for &Matrix<T>
where
    T: Clone + Add<Output = T>,
{
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), rhs.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T> Sub for &Matrix<T>
where
    T: Clone + Sub<Output = T>,
{
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), rhs.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T> Neg for &Matrix<T>
where
    T: Clone + Neg<Output = T>,
{
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T> Mul for &Matrix<T>
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        Matrix::mul(self, rhs)
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn rref(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(r) = (prow..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(prow, r);
            let inv = m.get(prow, c).inv().unwrap();
            for cc in c..m.cols {
                let v = m.get(prow, cc).clone() * inv.clone();
                m.set(prow, cc, v);
            }
            for rr in 0..m.rows {
                if rr == prow {
                    continue;
                }
                let f = m.get(rr, c).clone();
                if f.is_zero() {
                    continue;
                }
                for cc in c..m.cols {
                    let v = m.get(rr, cc).clone() - f.clone() * m.get(prow, cc).clone();
                    m.set(rr, cc, v);
                }
            }
            pivots.push(c);
            prow += 1;
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
        self.rref().pivots.len()
    }

    /// Basis of the right nullspace, one column per basis vector, read off the
    /// reduced echelon form (free variable set to 1, other free variables 0).
    pub fn nullspace(&self) -> Matrix<F> {
        let Echelon { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, F::one());
            for (i, &p) in pivots.iter().enumerate() {
                basis.set(p, k, -reduced.get(i, f).clone());
            }
        }
        basis
    }

    /// Solves `self * x = b` for a matrix `x`, returning `None` when there is
    /// no solution. Free variables are set to zero.
    pub fn solve(&self, b: &Matrix<F>) -> Option<Matrix<F>> {
        assert_eq!(self.rows, b.rows);
        let aug = Matrix::hstack(self.rows, &[self.clone(), b.clone()]);
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(p, c, reduced.get(i, self.cols + c).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.rows))?;
        (self.rank() == self.rows).then_some(x)
    }

    /// Indices of standard basis vectors that extend the column space of
    /// `self` to the whole ambient space, chosen greedily in index order.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let n = self.rows;
        let aug = Matrix::hstack(n, &[self.clone(), Matrix::identity(n)]);
        let Echelon { pivots, .. } = aug.rref();
        pivots
            .into_iter()
            .filter(|&p| p >= self.cols)
            .map(|p| p - self.cols)
            .collect()
    }

    /// Linearly independent subset of the columns (pivot columns).
    pub fn column_basis(&self) -> Matrix<F> {
        let piv = self.rref().pivots;
        self.select_cols(&piv)
    }

    /// `x^n` for a square matrix.
    pub fn pow(&self, n: usize) -> Matrix<F> {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Matrix<i64> {
    /// Rank over the rationals by fraction-free Gaussian elimination.
    pub fn rank_fraction_free(&self) -> usize {
        let mut m: Vec<Vec<i128>> = (0..self.rows)
            .map(|r| self.row(r).into_iter().map(i128::from).collect())
            .collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev: i128 = 1;
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, p);
            for r in rank + 1..rows {
                for cc in c + 1..cols {
                    m[r][cc] = (m[rank][c] * m[r][cc] - m[r][c] * m[rank][cc]) / prev;
                }
                m[r][c] = 0;
            }
            prev = m[rank][c];
            rank += 1;
        }
        rank
    }

    pub fn to_field<F: Field>(&self) -> Matrix<F> {
        self.map(|&x| F::from_i64(x))
    }
}
