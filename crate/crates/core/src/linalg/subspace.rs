use super::{LinalgError, Matrix};
use crate::fields::Field;

/// A subspace of F^d stored as the reduced row-echelon form of a spanning set.
///
/// Rows are nonzero, pivots strictly increase, every pivot entry is 1 and the
/// other entries of a pivot column vanish. Two values compare equal exactly
/// when they describe the same subspace.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubspaceBasis<F: Field> {
    ambient_dim: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Intersect,
    Sum,
}

impl<F: Field> SubspaceBasis<F> {
    pub fn zero(ambient_dim: usize, like: &F) -> Self {
        SubspaceBasis {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim, like),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize, like: &F) -> Self {
        SubspaceBasis {
            ambient_dim,
            basis: Matrix::identity(ambient_dim, like),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent or zero) vectors.
    pub fn from_vectors(
        ambient_dim: usize,
        vectors: Vec<Vec<F>>,
        like: &F,
    ) -> Result<Self, LinalgError> {
        let m = Matrix::from_rows(vectors, ambient_dim, like)?;
        Ok(Self::from_matrix_rows(&m))
    }

    /// Row space of `m`.
    pub fn from_matrix_rows(m: &Matrix<F>) -> Self {
        let (red, pivots) = m.rref();
        let rank = pivots.len();
        let zero = m.zero_element().clone();
        let entries = red.entries()[..rank * m.cols()].to_vec();
        let basis = Matrix::new(rank, m.cols(), entries, &zero).expect("consistent shape");
        SubspaceBasis {
            ambient_dim: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<F>> {
        (0..self.dim())
            .map(|i| self.basis.row(i).to_vec())
            .collect()
    }

    fn zero_element(&self) -> &F {
        self.basis.zero_element()
    }

    fn check_ambient(&self, found: usize, context: &'static str) -> Result<(), LinalgError> {
        if found != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                context,
                expected: self.ambient_dim,
                found,
            });
        }
        Ok(())
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Result<Option<Vec<F>>, LinalgError> {
        self.check_ambient(v.len(), "vector membership")?;
        // In RREF the coordinate along row i is the entry of v at pivot i.
        let coords: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    residual[j] = residual[j].sub(&c.mul(b));
                }
            }
        }
        Ok(residual.iter().all(Field::is_zero).then_some(coords))
    }

    pub fn contains_vector(&self, v: &[F]) -> Result<bool, LinalgError> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check_ambient(other.ambient_dim, "subspace containment")?;
        for i in 0..other.dim() {
            if !self.contains_vector(other.basis.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other.ambient_dim, "subspace sum")?;
        let mut vectors = self.vectors();
        vectors.extend(other.vectors());
        Self::from_vectors(self.ambient_dim, vectors, self.zero_element())
    }

    /// Zassenhaus intersection: reduce the block rows `[a | a]`, `[b | 0]`; the rows
    /// whose left half vanishes carry a basis of `A ∩ B` in their right half.
    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other.ambient_dim, "subspace intersection")?;
        let d = self.ambient_dim;
        let zero = self.zero_element().clone();
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for v in self.vectors() {
            let mut row = v.clone();
            row.extend(v);
            rows.push(row);
        }
        for v in other.vectors() {
            let mut row = v;
            row.extend(std::iter::repeat_n(zero.clone(), d));
            rows.push(row);
        }
        let m = Matrix::from_rows(rows, 2 * d, &zero)?;
        let (red, pivots) = m.rref();
        let mut vectors = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            if p >= d {
                vectors.push(red.row(i)[d..].to_vec());
            }
        }
        Self::from_vectors(d, vectors, &zero)
    }

    pub fn lattice(&self, other: &Self, op: LatticeOp) -> Result<Self, LinalgError> {
        match op {
            LatticeOp::Intersect => self.intersect(other),
            LatticeOp::Sum => self.sum(other),
        }
    }

    /// True iff `T·w ∈ self` for every operator `T` and every basis vector `w`.
    pub fn is_invariant_under(&self, ops: &[Matrix<F>]) -> Result<bool, LinalgError> {
        for t in ops {
            if !t.is_square() || t.rows() != self.ambient_dim {
                return Err(LinalgError::DimensionMismatch {
                    context: "invariance operator",
                    expected: self.ambient_dim,
                    found: t.rows().max(t.cols()),
                });
            }
            for i in 0..self.dim() {
                if !self.contains_vector(&t.apply(self.basis.row(i))?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True iff every operator sends the subspace to zero.
    pub fn is_annihilated_by(&self, ops: &[Matrix<F>]) -> Result<bool, LinalgError> {
        for t in ops {
            for i in 0..self.dim() {
                if !t.apply(self.basis.row(i))?.iter().all(Field::is_zero) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Matrix of `T` restricted to this (T-invariant) subspace, in the stored basis.
    pub fn restrict(&self, t: &Matrix<F>) -> Result<Matrix<F>, LinalgError> {
        let k = self.dim();
        let mut out = Matrix::zeros(k, k, self.zero_element());
        for j in 0..k {
            let image = t.apply(self.basis.row(j))?;
            let coords = self.coordinates(&image)?.ok_or(LinalgError::NotInvariant)?;
            for (i, c) in coords.into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        Ok(out)
    }
}

/// True iff the subspace is stable under every operator in `ops`.
pub fn invariance_check<F: Field>(
    w: &SubspaceBasis<F>,
    ops: &[Matrix<F>],
) -> Result<bool, LinalgError> {
    w.is_invariant_under(ops)
}
