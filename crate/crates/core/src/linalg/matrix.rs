use std::fmt;

use super::{LinalgError, SubspaceBasis};
use crate::fields::Field;

/// Dense row-major matrix over an exact field.
///
/// Operators act on column vectors: column `j` holds the image of basis
/// vector `j`. The matrix remembers a zero of its field so that empty or
/// all-zero matrices still know where they live.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
    zero: F,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<F>, like: &F) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                context: "matrix entries",
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
            zero: like.zero_like(),
        })
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize, like: &F) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    context: "matrix row",
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Matrix::new(n, cols, entries, like)
    }

    pub fn zeros(rows: usize, cols: usize, like: &F) -> Self {
        let zero = like.zero_like();
        Matrix {
            rows,
            cols,
            entries: vec![zero.clone(); rows * cols],
            zero,
        }
    }

    pub fn identity(n: usize, like: &F) -> Self {
        let mut m = Matrix::zeros(n, n, like);
        let one = like.one_like();
        for i in 0..n {
            m.set(i, i, one.clone());
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

    pub fn zero_element(&self) -> &F {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Field::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows, &self.zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn check_same_shape(&self, rhs: &Self, context: &'static str) -> Result<(), LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::ShapeMismatch {
                context,
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.check_same_shape(rhs, "matrix sum")?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Matrix {
            entries,
            ..self.clone_shape()
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.check_same_shape(rhs, "matrix difference")?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(Matrix {
            entries,
            ..self.clone_shape()
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        let entries = self.entries.iter().map(|a| a.mul(c)).collect();
        Matrix {
            entries,
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: Vec::new(),
            zero: self.zero.clone(),
        }
    }

    /// Matrix product; zero entries of the left factor are skipped.
    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch {
                context: "matrix product",
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.entries[idx] = out.entries[idx].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &[F]) -> Result<Vec<F>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = vec![self.zero.clone(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, slot) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *slot = slot.add(&a.mul(x));
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form and pivot columns.
    ///
    /// The pivot in each column is the smallest nonzero entry (by
    /// [`Field::size_hint`]) at or below the current row, which limits
    /// expression swell over Q(r). The reduced form itself does not depend on
    /// that choice, so the output is canonical.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..a.cols {
            if pivot_row == a.rows {
                break;
            }
            let Some(found) = (pivot_row..a.rows)
                .filter(|&i| !a.get(i, col).is_zero())
                .min_by_key(|&i| a.get(i, col).size_hint())
            else {
                continue;
            };
            a.swap_rows(found, pivot_row);
            let inv = a.get(pivot_row, col).inv().expect("pivot is nonzero");
            if !inv.is_one() {
                for j in col..a.cols {
                    let v = a.get(pivot_row, j).mul(&inv);
                    a.set(pivot_row, j, v);
                }
            }
            for i in 0..a.rows {
                if i == pivot_row {
                    continue;
                }
                let factor = a.get(i, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..a.cols {
                    let p = a.get(pivot_row, j);
                    if p.is_zero() {
                        continue;
                    }
                    let v = a.get(i, j).sub(&factor.mul(p));
                    a.set(i, j, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(i * self.cols + j, k * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of `{v : self · v = 0}`.
    pub fn kernel(&self) -> SubspaceBasis<F> {
        rref_and_kernel(self).1
    }

    /// Inverse by augmented elimination; singular input is an error.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::ShapeMismatch {
                context: "matrix inverse",
                left: (self.rows, self.cols),
                right: (self.rows, self.cols),
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n, &self.zero);
        let one = self.zero.one_like();
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, one.clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut inv = Matrix::zeros(n, n, &self.zero);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }
}

/// Reduced row-echelon form of `m` together with the canonical basis of its kernel.
///
/// `rank(rref) + dim(kernel) = cols`.
pub fn rref_and_kernel<F: Field>(m: &Matrix<F>) -> (Matrix<F>, SubspaceBasis<F>) {
    let (red, pivots) = m.rref();
    let cols = m.cols();
    let zero = m.zero_element().clone();
    let one = zero.one_like();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut vectors = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![zero.clone(); cols];
        v[f] = one.clone();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = red.get(row, f).neg();
        }
        vectors.push(v);
    }
    let kernel =
        SubspaceBasis::from_vectors(cols, vectors, &zero).expect("vectors have length cols");
    (red, kernel)
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
