//! Small exact rational square matrices for linear variable changes.

use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    size: usize,
    entries: Vec<Vec<Rational>>,
}

#[derive(Debug, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix is not square: {rows} rows, row {row} has {cols} columns")]
    NotSquare { rows: usize, row: usize, cols: usize },
    #[error("matrix is empty")]
    Empty,
}

impl Matrix {
    pub fn from_rows(entries: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let size = entries.len();
        if size == 0 {
            return Err(MatrixError::Empty);
        }
        for (row, r) in entries.iter().enumerate() {
            if r.len() != size {
                return Err(MatrixError::NotSquare {
                    rows: size,
                    row,
                    cols: r.len(),
                });
            }
        }
        Ok(Matrix { size, entries })
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Matrix::zero(size);
        for k in 0..size {
            m.entries[k][k] = Rational::one();
        }
        m
    }

    pub fn zero(size: usize) -> Self {
        assert!(size > 0);
        Matrix {
            size,
            entries: vec![vec![Rational::zero(); size]; size],
        }
    }

    /// The Minkowski metric diag(1, -1, ..., -1).
    pub fn minkowski_metric(size: usize) -> Self {
        let mut m = Matrix::identity(size);
        for k in 1..size {
            m.entries[k][k] = -Rational::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Rational) {
        self.entries[row][col] = v;
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.size);
        for r in 0..self.size {
            for c in 0..self.size {
                out.entries[c][r] = self.entries[r][c].clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.size, rhs.size, "matrix size mismatch in product");
        let mut out = Matrix::zero(self.size);
        for r in 0..self.size {
            for c in 0..self.size {
                let mut acc = Rational::zero();
                for k in 0..self.size {
                    acc += &self.entries[r][k] * &rhs.entries[k][c];
                }
                out.entries[r][c] = acc;
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.size, rhs.size, "matrix size mismatch in difference");
        let mut out = Matrix::zero(self.size);
        for r in 0..self.size {
            for c in 0..self.size {
                out.entries[r][c] = &self.entries[r][c] - &rhs.entries[r][c];
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    /// First nonzero entry in row-major order, if any.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Rational)> {
        for r in 0..self.size {
            for c in 0..self.size {
                if !self.entries[r][c].is_zero() {
                    return Some((r, c, &self.entries[r][c]));
                }
            }
        }
        None
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|e| e.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
