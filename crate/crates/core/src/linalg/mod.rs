//! Dense exact linear algebra: matrices, kernels and the subspace lattice.

mod matrix;
mod subspace;

use thiserror::Error;

pub use matrix::{rref_and_kernel, Matrix};
pub use subspace::{invariance_check, LatticeOp, SubspaceBasis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{context}: expected dimension {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{context}: incompatible shapes {left:?} and {right:?}")]
    ShapeMismatch {
        context: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is singular")]
    Singular,
    #[error("subspace is not invariant under the operator")]
    NotInvariant,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{Field, Rational};
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn int_matrix(rows: &[Vec<i64>]) -> Matrix<Rational> {
        let cols = rows[0].len();
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
            cols,
            &q(0),
        )
        .unwrap()
    }

    /// Test-only oracle: Bareiss fraction-free elimination over Z followed by
    /// integer back substitution. Shares no code with `Matrix::rref`.
    fn bareiss_kernel(a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let rows = a.len();
        let cols = a[0].len();
        let mut m: Vec<Vec<BigInt>> = a.to_vec();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(p, r);
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Vec::new();
        for &f in &free {
            // Solve the echelon system with x_f = D, other free vars 0, clearing
            // denominators by scaling the whole vector.
            let mut x: Vec<BigInt> = vec![BigInt::zero(); cols];
            let mut scale = BigInt::one();
            x[f] = BigInt::one();
            for (row, &p) in pivots.iter().enumerate().rev() {
                let mut s = BigInt::zero();
                for j in p + 1..cols {
                    s += &m[row][j] * &x[j];
                }
                // m[row][p] * x_p + s = 0 (up to the common scale)
                let d = m[row][p].clone();
                for v in x.iter_mut() {
                    *v *= &d;
                }
                scale *= &d;
                x[p] = -s;
            }
            let _ = scale;
            out.push(x);
        }
        out
    }

    fn random_low_rank(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
        let k = rng.gen_range(0..=n);
        let left: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..k).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let right: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..k).map(|t| left[i][t] * right[t][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn identity_and_zero_kernels() {
        let id = Matrix::identity(5, &q(0));
        let (red, ker) = rref_and_kernel(&id);
        assert!(red.is_identity());
        assert_eq!(ker.dim(), 0);
        let z = Matrix::zeros(5, 5, &q(0));
        assert_eq!(z.kernel(), SubspaceBasis::full(5, &q(0)));
    }

    #[test]
    fn kernel_matches_fraction_free_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..40 {
            let ints = random_low_rank(&mut rng, 6);
            let m = int_matrix(&ints);
            let (red, ker) = rref_and_kernel(&m);
            assert_eq!(red.rank() + ker.dim(), 6);
            let big: Vec<Vec<BigInt>> = ints
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let oracle: Vec<Vec<Rational>> = bareiss_kernel(&big)
                .into_iter()
                .map(|v| {
                    v.into_iter()
                        .map(|x| Rational::new(x, 1).unwrap())
                        .collect()
                })
                .collect();
            for v in &oracle {
                assert!(m.apply(v).unwrap().iter().all(Field::is_zero));
            }
            let oracle_space = SubspaceBasis::from_vectors(6, oracle, &q(0)).unwrap();
            assert_eq!(ker, oracle_space);
        }
    }

    #[test]
    fn inverse_round_trip_and_singular() {
        let m = int_matrix(&[vec![2, 1, 0], vec![1, 1, 0], vec![0, 3, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let s = int_matrix(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(s.inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn lattice_identities() {
        let a = SubspaceBasis::from_vectors(
            4,
            vec![vec![q(1), q(2), q(0), q(0)], vec![q(0), q(0), q(1), q(1)]],
            &q(0),
        )
        .unwrap();
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.sum(&SubspaceBasis::zero(4, &q(0))).unwrap(), a);
        assert!(a.contains_vector(&[q(2), q(4), q(3), q(3)]).unwrap());
        assert!(!a.contains_vector(&[q(1), q(0), q(0), q(0)]).unwrap());
        let b = SubspaceBasis::<Rational>::zero(3, &q(0));
        assert!(a.intersect(&b).is_err());
    }

    #[test]
    fn invariance_trivial_cases() {
        let t = int_matrix(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
        assert!(SubspaceBasis::full(3, &q(0))
            .is_invariant_under(std::slice::from_ref(&t))
            .unwrap());
        assert!(SubspaceBasis::zero(3, &q(0))
            .is_invariant_under(std::slice::from_ref(&t))
            .unwrap());
        let line = SubspaceBasis::from_vectors(3, vec![vec![q(1), q(1), q(1)]], &q(0)).unwrap();
        assert!(line.is_invariant_under(std::slice::from_ref(&t)).unwrap());
        let other = SubspaceBasis::from_vectors(3, vec![vec![q(1), q(0), q(0)]], &q(0)).unwrap();
        assert!(!other.is_invariant_under(std::slice::from_ref(&t)).unwrap());
        assert!(line
            .is_invariant_under(&[Matrix::identity(4, &q(0))])
            .is_err());
        let restricted = line.restrict(&t).unwrap();
        assert!(restricted.is_identity());
    }

    fn arb_subspace() -> impl Strategy<Value = SubspaceBasis<Rational>> {
        prop::collection::vec(prop::collection::vec(-2i64..=2, 6), 0..5).prop_map(|vs| {
            let vectors = vs
                .into_iter()
                .map(|v| v.into_iter().map(q).collect())
                .collect();
            SubspaceBasis::from_vectors(6, vectors, &q(0)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn modular_dimension_identity(a in arb_subspace(), b in arb_subspace()) {
            let meet = a.intersect(&b).unwrap();
            let join = a.sum(&b).unwrap();
            prop_assert_eq!(meet.dim() + join.dim(), a.dim() + b.dim());
            prop_assert!(a.contains(&meet).unwrap() && b.contains(&meet).unwrap());
            prop_assert!(join.contains(&a).unwrap() && join.contains(&b).unwrap());
        }

        #[test]
        fn canonical_basis_is_independent_of_spanning_set(a in arb_subspace(), shuffle in any::<u64>()) {
            let mut vs = a.vectors();
            let mut rng = ChaCha8Rng::seed_from_u64(shuffle);
            // Replace the spanning set by random invertible recombinations.
            for i in 0..vs.len() {
                for j in 0..vs.len() {
                    if i != j {
                        let c = q(rng.gen_range(-2..=2));
                        let add: Vec<Rational> = vs[j].iter().map(|x| x.mul(&c)).collect();
                        vs[i] = vs[i].iter().zip(&add).map(|(x, y)| x.add(y)).collect();
                    }
                }
            }
            vs.reverse();
            let b = SubspaceBasis::from_vectors(6, vs, &q(0)).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
