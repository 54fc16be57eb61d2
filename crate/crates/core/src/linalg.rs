//! Dense matrices over a [`Field`] and the Gaussian elimination they need.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::Zero;

use crate::field::{Field, FiniteField};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Builds a matrix from row-major entries.
    ///
    /// Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<F>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Self { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        let mut scratch = self.data.clone();
        rank_in_place(&mut scratch, self.rows, self.cols)
    }

    /// Reduced row echelon form, with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m.data, m.rows, m.cols);
        (m, pivots)
    }

    /// Basis of `{x : self * x = 0}` as rows of a matrix in reduced echelon form.
    pub fn nullspace(&self) -> Self {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Self::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            basis[(k, f)] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                basis[(k, p)] = -r[(row, f)];
            }
        }
        basis.rref().0
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = F::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[r * n + col].is_zero()) else {
                return F::zero();
            };
            if pivot != col {
                for c in 0..n {
                    m.swap(pivot * n + c, col * n + c);
                }
                det = -det;
            }
            let pv = m[col * n + col];
            det = det * pv;
            let inv = pv.inv().expect("nonzero pivot");
            for r in col + 1..n {
                let factor = m[r * n + col] * inv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m[col * n + c];
                    m[r * n + c] = m[r * n + c] - factor * v;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)];
            }
            aug[(r, n + r)] = F::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)];
            }
        }
        Some(inv)
    }
}

impl<F: FiniteField> Matrix<F> {
    /// Every `rows x cols` matrix, in lexicographic order of row-major entries.
    pub fn all(rows: usize, cols: usize) -> impl Iterator<Item = Self> {
        let len = rows * cols;
        let total = (F::ORDER as u64).pow(len as u32);
        (0..total).map(move |mut code| {
            let mut data = vec![F::zero(); len];
            for slot in data.iter_mut().rev() {
                *slot = F::from_index((code % F::ORDER as u64) as u32);
                code /= F::ORDER as u64;
            }
            Self { rows, cols, data }
        })
    }

    /// All elements of `GL_n(F)`.
    pub fn general_linear_group(n: usize) -> Vec<Self> {
        Self::all(n, n).filter(Self::is_invertible).collect()
    }
}

/// `|GL_n(F_q)| = prod_{k<n} (q^n - q^k)`.
pub fn general_linear_order(n: usize, q: u32) -> u128 {
    let q = q as u128;
    let qn = q.pow(n as u32);
    (0..n as u32).map(|k| qn - q.pow(k)).product()
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;

    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    out[(r, c)] = out[(r, c)] + a * rhs[(k, c)];
                }
            }
        }
        out
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
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
        write!(f, "]")
    }
}

/// Rank of a row-major `rows x cols` buffer; the buffer is clobbered.
pub fn rank_in_place<F: Field>(m: &mut [F], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r * cols + col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for c in col..cols {
                m.swap(pivot * cols + c, rank * cols + c);
            }
        }
        let inv = m[rank * cols + col].inv().expect("nonzero pivot");
        for r in rank + 1..rows {
            let factor = m[r * cols + col] * inv;
            if factor.is_zero() {
                continue;
            }
            for c in col..cols {
                let v = m[rank * cols + c];
                m[r * cols + c] = m[r * cols + c] - factor * v;
            }
        }
        rank += 1;
    }
    rank
}

fn rref_in_place<F: Field>(m: &mut [F], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(pivot) = (row..rows).find(|&r| !m[r * cols + col].is_zero()) else {
            continue;
        };
        for c in 0..cols {
            m.swap(pivot * cols + c, row * cols + c);
        }
        let inv = m[row * cols + col].inv().expect("nonzero pivot");
        for c in 0..cols {
            m[row * cols + c] = m[row * cols + c] * inv;
        }
        for r in 0..rows {
            if r == row {
                continue;
            }
            let factor = m[r * cols + col];
            if factor.is_zero() {
                continue;
            }
            for c in 0..cols {
                let v = m[row * cols + c];
                m[r * cols + c] = m[r * cols + c] - factor * v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}
