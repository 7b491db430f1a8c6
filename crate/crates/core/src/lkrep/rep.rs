use std::collections::BTreeMap;

use super::{lk_dimension, positive_roots, LkError, ParamSpec, RootIndex};
use crate::fields::Field;
use crate::linalg::Matrix;
use crate::report::Check;

/// Which of the six defining cases of ν_i applies to a basis vector.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NuCase {
    /// Support misses {i−1, i, i+1} or contains all of it: `r·x_β`.
    Scalar,
    /// β = α_i: `(1/l)·x_β`.
    Simple,
    /// β = α_s + … + α_{i−1}: `x_{β+α_i}`.
    A,
    /// β = α_{i+1} + … + α_k: `x_{β+α_i} + m r^{ht−1} x_{α_i} − m x_β`.
    B,
    /// β = α_s + … + α_i with s ≤ i−1: `x_{β−α_i} + m/(l r^{ht−2}) x_{α_i} − m x_β`.
    C,
    /// β = α_i + … + α_k with k ≥ i+1: `x_{β−α_i}`.
    D,
}

/// Classifies β for ν_i. Indices outside 1..=n−1 never belong to a support.
pub fn nu_case(n: usize, i: usize, beta: RootIndex) -> Result<NuCase, LkError> {
    let (s, t) = (beta.s(), beta.t());
    let in_supp = |k: usize| k >= 1 && k < n && beta.supports(k);
    let window = [i.wrapping_sub(1), i, i + 1];
    let none = window.iter().all(|&k| !in_supp(k));
    let all = window.iter().all(|&k| in_supp(k));
    let candidates = [
        (NuCase::Scalar, none || all),
        (NuCase::Simple, s == i && t == i + 1),
        (NuCase::A, t == i && s < i),
        (NuCase::B, s == i + 1),
        (NuCase::C, t == i + 1 && s < i),
        (NuCase::D, s == i && t >= i + 2),
    ];
    let hits: Vec<NuCase> = candidates
        .iter()
        .filter(|(_, hit)| *hit)
        .map(|(c, _)| *c)
        .collect();
    match hits.as_slice() {
        [single] => Ok(*single),
        _ => Err(LkError::CaseConflict {
            i,
            root: beta.to_string(),
            matches: hits.len(),
        }),
    }
}

/// Matrix of ν_i on V^(n); column j is the image of the j-th basis vector.
pub fn nu_matrix<F: Field>(p: &ParamSpec<F>, i: usize) -> Result<Matrix<F>, LkError> {
    let n = p.n();
    if i == 0 || i >= n {
        return Err(LkError::GeneratorOutOfRange { i, n });
    }
    let dim = lk_dimension(n);
    let r = p.r();
    let m = p.m();
    let l_inv = p.l().inv()?;
    let alpha_i = RootIndex::new(i, i + 1)?.position(n);
    let mut out = Matrix::zeros(dim, dim, r);
    let mut add = |row: usize, col: usize, v: F| {
        let cur = out.get(row, col).add(&v);
        out.set(row, col, cur);
    };
    for beta in positive_roots(n)? {
        let col = beta.position(n);
        let (s, t) = (beta.s(), beta.t());
        let ht = beta.height() as i64;
        let pos = |a: usize, b: usize| RootIndex::new(a, b).map(|x| x.position(n));
        match nu_case(n, i, beta)? {
            NuCase::Scalar => add(col, col, r.clone()),
            NuCase::Simple => add(col, col, l_inv.clone()),
            NuCase::A => add(pos(s, i + 1)?, col, r.one_like()),
            NuCase::B => {
                add(pos(i, t)?, col, r.one_like());
                add(alpha_i, col, m.mul(&p.r_pow(ht - 1)));
                add(col, col, m.neg());
            }
            NuCase::C => {
                add(pos(s, i)?, col, r.one_like());
                add(alpha_i, col, m.mul(&l_inv).mul(&p.r_pow(2 - ht)));
                add(col, col, m.neg());
            }
            NuCase::D => add(pos(i + 1, t)?, col, r.one_like()),
        }
    }
    Ok(out)
}

/// ν(e_i) = (l/m)(ν_i² + m ν_i − id).
pub fn e_matrix<F: Field>(
    p: &ParamSpec<F>,
    i: usize,
    nu_i: &Matrix<F>,
) -> Result<Matrix<F>, LkError> {
    if i == 0 || i >= p.n() {
        return Err(LkError::GeneratorOutOfRange { i, n: p.n() });
    }
    let id = Matrix::identity(nu_i.rows(), p.r());
    let quad = nu_i.mul(nu_i)?.add(&nu_i.scale(p.m()))?.sub(&id)?;
    Ok(quad.scale(&p.l().div(p.m())?))
}

/// ν_i, ν_i⁻¹, ν(e_i) and ν(C_ij) for one parameter choice. Indices are 1-based.
#[derive(Clone, Debug)]
pub struct RepSet<F: Field> {
    params: ParamSpec<F>,
    nu: Vec<Matrix<F>>,
    nu_inv: Vec<Matrix<F>>,
    e: Vec<Matrix<F>>,
    c: BTreeMap<(usize, usize), Matrix<F>>,
}

impl<F: Field> RepSet<F> {
    pub fn new(params: ParamSpec<F>) -> Result<Self, LkError> {
        let nu = (1..params.n())
            .map(|i| nu_matrix(&params, i))
            .collect::<Result<Vec<_>, _>>()?;
        RepSet::from_generators(params, nu)
    }

    /// Builds everything else from the given ν_i (lets tests inject corrupted generators).
    pub fn from_generators(params: ParamSpec<F>, nu: Vec<Matrix<F>>) -> Result<Self, LkError> {
        let n = params.n();
        if nu.len() != n - 1 {
            return Err(LkError::InvalidParams(format!(
                "expected {} generators, got {}",
                n - 1,
                nu.len()
            )));
        }
        let mut nu_inv = Vec::with_capacity(n - 1);
        for g in &nu {
            let inv = g.inverse()?;
            debug_assert!(g.mul(&inv)?.is_identity());
            nu_inv.push(inv);
        }
        let e = nu
            .iter()
            .enumerate()
            .map(|(k, g)| e_matrix(&params, k + 1, g))
            .collect::<Result<Vec<_>, _>>()?;
        let mut rep = RepSet {
            params,
            nu,
            nu_inv,
            e,
            c: BTreeMap::new(),
        };
        // C_{i,j+1} = ν_j⁻¹ C_{i,j} ν_j
        for i in 1..n {
            let mut cur = rep.e(i).clone();
            rep.c.insert((i, i + 1), cur.clone());
            for j in i + 1..n {
                cur = rep.nu_inv(j).mul(&cur)?.mul(rep.nu(j))?;
                rep.c.insert((i, j + 1), cur.clone());
            }
        }
        Ok(rep)
    }

    pub fn params(&self) -> &ParamSpec<F> {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn dim(&self) -> usize {
        lk_dimension(self.n())
    }

    pub fn nu(&self, i: usize) -> &Matrix<F> {
        &self.nu[i - 1]
    }

    pub fn nu_inv(&self, i: usize) -> &Matrix<F> {
        &self.nu_inv[i - 1]
    }

    pub fn e(&self, i: usize) -> &Matrix<F> {
        &self.e[i - 1]
    }

    pub fn generators(&self) -> &[Matrix<F>] {
        &self.nu
    }

    pub fn e_all(&self) -> &[Matrix<F>] {
        &self.e
    }

    /// ν(C_ij) for `1 ≤ i < j ≤ n`.
    pub fn c(&self, i: usize, j: usize) -> Option<&Matrix<F>> {
        self.c.get(&(i, j))
    }

    pub fn c_all(&self) -> impl Iterator<Item = ((usize, usize), &Matrix<F>)> {
        self.c.iter().map(|(k, v)| (*k, v))
    }
}

/// ν(C_ij) straight from the defining word ν_{j−1}⁻¹⋯ν_{i+1}⁻¹ · ν(e_i) · ν_{i+1}⋯ν_{j−1}.
pub fn c_matrix<F: Field>(rep: &RepSet<F>, i: usize, j: usize) -> Result<Matrix<F>, LkError> {
    let n = rep.n();
    if i == 0 || i >= j || j > n {
        return Err(LkError::InvalidPair { i, j, n });
    }
    let mut left = Matrix::identity(rep.dim(), rep.params().r());
    let mut right = left.clone();
    for k in (i + 1..j).rev() {
        left = left.mul(rep.nu_inv(k))?;
    }
    for k in i + 1..j {
        right = right.mul(rep.nu(k))?;
    }
    Ok(left.mul(rep.e(i))?.mul(&right)?)
}

/// The opposite conjugate ν_{i+1}⋯ν_{j−1} · ν(e_i) · ν_{j−1}⁻¹⋯ν_{i+1}⁻¹.
///
/// This is the convention under which the tabulated actions of C_35 on w_23,
/// w_24, w_34, w_13 hold. It is another conjugate of e_i, so it also kills
/// every proper invariant subspace, but its kernels do not cut out K(n).
pub fn c_matrix_reversed<F: Field>(
    rep: &RepSet<F>,
    i: usize,
    j: usize,
) -> Result<Matrix<F>, LkError> {
    let n = rep.n();
    if i == 0 || i >= j || j > n {
        return Err(LkError::InvalidPair { i, j, n });
    }
    let mut left = Matrix::identity(rep.dim(), rep.params().r());
    let mut right = left.clone();
    for k in i + 1..j {
        left = left.mul(rep.nu(k))?;
    }
    for k in (i + 1..j).rev() {
        right = right.mul(rep.nu_inv(k))?;
    }
    Ok(left.mul(rep.e(i))?.mul(&right)?)
}

/// Exact checks of the braid relations and the BMW relations involving e_i.
pub fn relation_suite<F: Field>(rep: &RepSet<F>) -> Result<Vec<Check>, LkError> {
    let n = rep.n();
    let l = rep.params().l();
    let l_inv = l.inv()?;
    let mut checks = Vec::new();
    for i in 1..n {
        checks.push(Check::new(
            format!("nu{i} * nu{i}^-1 = id"),
            rep.nu(i).mul(rep.nu_inv(i))?.is_identity(),
        ));
        checks.push(Check::new(
            format!("g{i} e{i} = l^-1 e{i}"),
            rep.nu(i).mul(rep.e(i))? == rep.e(i).scale(&l_inv),
        ));
        for j in i + 1..n {
            let (a, b) = (rep.nu(i), rep.nu(j));
            if j == i + 1 {
                let lhs = a.mul(b)?.mul(a)?;
                let rhs = b.mul(a)?.mul(b)?;
                checks.push(Check::new(
                    format!("braid nu{i} nu{j} nu{i} = nu{j} nu{i} nu{j}"),
                    lhs == rhs,
                ));
                for (x, y) in [(i, j), (j, i)] {
                    let lhs = rep.e(x).mul(rep.nu(y))?.mul(rep.e(x))?;
                    checks.push(Check::new(
                        format!("e{x} g{y} e{x} = l e{x}"),
                        lhs == rep.e(x).scale(l),
                    ));
                }
            } else {
                checks.push(Check::new(
                    format!("commute nu{i} nu{j}"),
                    a.mul(b)? == b.mul(a)?,
                ));
                checks.push(Check::new(
                    format!("e{i} e{j} = 0"),
                    rep.e(i).mul(rep.e(j))?.is_zero(),
                ));
                checks.push(Check::new(
                    format!("e{j} e{i} = 0"),
                    rep.e(j).mul(rep.e(i))?.is_zero(),
                ));
            }
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{RatFunc, Rational};
    use crate::lkrep::{LCase, LaurentMonomial};

    fn r() -> RatFunc {
        RatFunc::indeterminate()
    }

    fn col_as_map(
        m: &Matrix<RatFunc>,
        n: usize,
        beta: (usize, usize),
    ) -> BTreeMap<(usize, usize), RatFunc> {
        let col = RootIndex::new(beta.0, beta.1).unwrap().position(n);
        positive_roots(n)
            .unwrap()
            .into_iter()
            .filter(|root| !m.get(root.position(n), col).is_zero())
            .map(|root| ((root.s(), root.t()), m.get(root.position(n), col).clone()))
            .collect()
    }

    fn r5(n: usize) -> ParamSpec<RatFunc> {
        ParamSpec::ratfunc(n, LCase::Explicit(LaurentMonomial::new(1, 5))).unwrap()
    }

    #[test]
    fn nu_columns_match_the_six_cases() {
        let p = r5(3);
        let l_inv = p.l().inv().unwrap();
        let m = p.m().clone();
        let nu1 = nu_matrix(&p, 1).unwrap();
        let nu2 = nu_matrix(&p, 2).unwrap();
        assert_eq!(
            col_as_map(&nu1, 3, (1, 2)),
            BTreeMap::from([((1, 2), l_inv)])
        );
        assert_eq!(
            col_as_map(&nu2, 3, (1, 2)),
            BTreeMap::from([((1, 3), r().one_like())])
        );
        // case (b) with ht = 1: w13 + m w12 − m w23
        assert_eq!(
            col_as_map(&nu1, 3, (2, 3)),
            BTreeMap::from([
                ((1, 3), r().one_like()),
                ((1, 2), m.clone()),
                ((2, 3), m.neg())
            ])
        );
        let p4 = r5(4);
        let nu2 = nu_matrix(&p4, 2).unwrap();
        let m4 = p4.m().clone();
        // case (c) with ht = 2: w12 + (m/l) w23 − m w13
        assert_eq!(
            col_as_map(&nu2, 4, (1, 3)),
            BTreeMap::from([
                ((1, 2), r().one_like()),
                ((2, 3), m4.div(p4.l()).unwrap()),
                ((1, 3), m4.neg())
            ])
        );
    }

    #[test]
    fn cases_partition_every_root() {
        for n in 2..=8 {
            for i in 1..n {
                for beta in positive_roots(n).unwrap() {
                    nu_case(n, i, beta).unwrap();
                }
            }
        }
    }

    #[test]
    fn generator_index_guard() {
        let p = r5(4);
        assert!(matches!(
            nu_matrix(&p, 0),
            Err(LkError::GeneratorOutOfRange { .. })
        ));
        assert!(matches!(
            nu_matrix(&p, 4),
            Err(LkError::GeneratorOutOfRange { .. })
        ));
    }

    #[test]
    fn e_relations_on_small_n() {
        for n in 3..=5 {
            let rep = RepSet::new(r5(n)).unwrap();
            let l_inv = rep.params().l().inv().unwrap();
            for i in 1..n {
                assert_eq!(rep.nu(i).mul(rep.e(i)).unwrap(), rep.e(i).scale(&l_inv));
            }
        }
        let rep = RepSet::new(r5(4)).unwrap();
        for (i, j) in [(1, 2), (2, 1), (2, 3), (3, 2)] {
            let lhs = rep.e(i).mul(rep.nu(j)).unwrap().mul(rep.e(i)).unwrap();
            assert_eq!(lhs, rep.e(i).scale(rep.params().l()));
        }
        let rep = RepSet::new(r5(5)).unwrap();
        for (i, j) in [(1, 3), (1, 4), (2, 4)] {
            assert!(rep.e(i).mul(rep.e(j)).unwrap().is_zero());
        }
    }

    #[test]
    fn c_from_recursion_matches_word() {
        let rep = RepSet::new(ParamSpec::ratfunc(5, LCase::EqR).unwrap()).unwrap();
        assert_eq!(rep.c(1, 2).unwrap(), rep.e(1));
        for i in 1..5 {
            for j in i + 1..=5 {
                assert_eq!(
                    &c_matrix(&rep, i, j).unwrap(),
                    rep.c(i, j).unwrap(),
                    "C{i}{j}"
                );
            }
        }
        assert!(c_matrix(&rep, 3, 3).is_err());
        assert!(c_matrix(&rep, 2, 6).is_err());
    }

    #[test]
    fn reversed_c35_spot_values_at_l_inverse_r() {
        let n = 5;
        let p = ParamSpec::ratfunc(n, LCase::Explicit(LaurentMonomial::new(1, -1))).unwrap();
        let rep = RepSet::new(p).unwrap();
        let c35 = c_matrix_reversed(&rep, 3, 5).unwrap();
        assert_ne!(&c35, rep.c(3, 5).unwrap());
        let w35 = RootIndex::new(3, 5).unwrap().position(n);
        let image = |s: usize, t: usize| {
            let col = RootIndex::new(s, t).unwrap().position(n);
            let v = c35.column(col);
            // All of the image sits on w35.
            for (k, x) in v.iter().enumerate() {
                if k != w35 {
                    assert!(x.is_zero(), "C35 w{s}{t} has a component off w35");
                }
            }
            v[w35].clone()
        };
        let rinv = r().inv().unwrap();
        let l_inv = rep.params().l().inv().unwrap();
        assert_eq!(image(2, 3), rinv);
        assert_eq!(image(2, 4), rinv.sub(&r()).mul(&l_inv.sub(&rinv)));
        assert_eq!(image(3, 4), l_inv);
        assert_eq!(image(1, 3), r().pow(-2).unwrap());
    }

    #[test]
    fn relations_hold_for_generic_l() {
        for n in 3..=4 {
            let rep = RepSet::new(r5(n)).unwrap();
            for check in relation_suite(&rep).unwrap() {
                assert!(check.pass, "{}", check.name);
            }
        }
        let rep = RepSet::new(ParamSpec::ratfunc(4, LCase::EqNegR3).unwrap()).unwrap();
        assert!(relation_suite(&rep).unwrap().iter().all(|c| c.pass));
    }

    #[test]
    fn corrupted_generator_breaks_braid_relation() {
        let p = r5(3);
        let mut nu = vec![nu_matrix(&p, 1).unwrap(), nu_matrix(&p, 2).unwrap()];
        let v = nu[0].get(0, 0).add(&RatFunc::one());
        nu[0].set(0, 0, v);
        let rep = RepSet::from_generators(p, nu).unwrap();
        let checks = relation_suite(&rep).unwrap();
        let braid = checks.iter().find(|c| c.name.starts_with("braid")).unwrap();
        assert!(!braid.pass);
    }

    #[test]
    fn rational_specialization_builds() {
        let p = ParamSpec::rational(
            4,
            Rational::new(3, 2).unwrap(),
            Rational::new(7, 5).unwrap(),
        )
        .unwrap();
        let rep = RepSet::new(p).unwrap();
        assert!(relation_suite(&rep).unwrap().iter().all(|c| c.pass));
    }
}
