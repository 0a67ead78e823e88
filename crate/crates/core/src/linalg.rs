//! Dense matrices and Gaussian elimination over a [`Scalar`] field.
//!
//! Instantiated with [`crate::Rational`] this is the exact solver every closed
//! form is checked against. Pivoting takes the first nonzero entry in the
//! column.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != ncols) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} entries, expected {ncols}",
                rows[bad].len()
            )));
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds an `rows x cols` matrix from `f(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Matrix product. Zero entries of `self` are skipped, so a sparse left
    /// factor costs proportionally less.
    pub fn multiply(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::<T>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let support: Vec<usize> = (0..self.cols).filter(|&k| !self[(i, k)].is_zero()).collect();
            for j in 0..other.cols {
                out[(i, j)] =
                    T::sum_of_products(support.iter().map(|&k| (&self[(i, k)], &other[(k, j)])));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[T]) -> Result<Vec<T>> {
        if self.cols != x.len() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                T::sum_of_products(self.row(i).iter().zip(x).filter(|(a, _)| !a.is_zero()))
            })
            .collect())
    }

    /// Exact identity test: square, ones on the diagonal, zeros elsewhere.
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
            })
    }

    /// Solves `self * x = b` by Gaussian elimination with first-nonzero
    /// pivoting.
    ///
    /// For exact scalars, debug builds re-multiply and assert `A x = b`.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        let n = self.rows;
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "solve needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        if b.len() != n {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, expected {n}",
                b.len()
            )));
        }

        let mut a = self.data.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r * n + col].is_zero())
                .ok_or(Error::Singular { row: col })?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                rhs.swap(pivot, col);
            }
            let p = a[col * n + col].clone();
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone() / p.clone();
                a[r * n + col] = T::zero();
                for j in col + 1..n {
                    let delta = factor.clone() * a[col * n + j].clone();
                    a[r * n + j] = a[r * n + j].clone() - delta;
                }
                rhs[r] = rhs[r].clone() - factor * rhs[col].clone();
            }
        }

        let mut x = vec![T::zero(); n];
        for i in (0..n).rev() {
            let mut acc = rhs[i].clone();
            for j in i + 1..n {
                let aij = &a[i * n + j];
                if !aij.is_zero() {
                    acc = acc - aij.clone() * x[j].clone();
                }
            }
            x[i] = acc / a[i * n + i].clone();
        }

        if cfg!(debug_assertions) && T::EXACT {
            debug_assert_eq!(self.mul_vec(&x)?, b, "exact solve failed its residual check");
        }
        Ok(x)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}
