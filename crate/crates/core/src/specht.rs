//! Partitions, standard Young tableaux, the branching rule, and the matching of
//! invariant subspaces of V^(n) with Specht modules S^λ.
//!
//! A subspace W is fingerprinted by its dimension, the multiplicities of the
//! g_1-eigenvalues r and −1/r, and the dimensions of its pieces under
//! restriction to level n−1. On S^λ these are the number of standard tableaux,
//! the numbers with 2 to the right of / below 1, and the dimensions of the S^μ
//! for μ = λ minus a corner. The restriction pieces of W are the eigenspaces
//! of the Jucys–Murphy element L_n = g_{n−1}⋯g_1 g_1⋯g_{n−1}, which acts on the
//! S^μ obtained by removing a box of content c as the scalar r^{2c}, so each
//! piece is also labelled by that content.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::fields::{CyclotomicElement, Field, FieldDescriptor, RatFunc};
use crate::invariant::{compute_kn, onedim_vector, s_subspace, span_of, InvariantError};
use crate::linalg::{Matrix, SubspaceBasis};
use crate::lkrep::{params_from_tq, LCase, ParamSpec, RepSet, TCase};
use crate::report::Check;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, InvariantError> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(InvariantError::Precondition(format!(
                "not a partition: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let parts = (0..self.parts[0])
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Content (column − row) of the last cell in row `row`.
    fn corner_content(&self, row: usize) -> i64 {
        self.parts[row] as i64 - 1 - row as i64
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = InvariantError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| InvariantError::Precondition(format!("not a partition: {s:?}")))?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// All partitions of n, in reverse lexicographic order starting from (n).
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// n! / ∏ hook lengths.
pub fn hook_length_dim(lam: &Partition) -> u64 {
    let conj = lam.conjugate();
    let mut num: u128 = (1..=lam.n() as u128).product();
    let mut den: u128 = 1;
    for (i, &row) in lam.parts.iter().enumerate() {
        for j in 0..row {
            den *= (row - j - 1 + conj.parts[j] - i - 1 + 1) as u128;
        }
    }
    num /= den;
    num as u64
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SytCounts {
    pub count: u64,
    pub g1_row: u64,
    pub g1_col: u64,
}

/// Counts standard Young tableaux by exhaustive filling, split by where 2 sits.
pub fn enumerate_syt(lam: &Partition) -> SytCounts {
    fn fill(
        lam: &[usize],
        filled: &mut Vec<usize>,
        next: usize,
        total: usize,
        two_in_row0: &mut Option<bool>,
        out: &mut SytCounts,
    ) {
        if next > total {
            out.count += 1;
            match two_in_row0 {
                Some(true) => out.g1_row += 1,
                Some(false) => out.g1_col += 1,
                None => {}
            }
            return;
        }
        for row in 0..lam.len() {
            let fits = filled[row] < lam[row] && (row == 0 || filled[row - 1] > filled[row]);
            if !fits {
                continue;
            }
            filled[row] += 1;
            let saved = *two_in_row0;
            if next == 2 {
                *two_in_row0 = Some(row == 0);
            }
            fill(lam, filled, next + 1, total, two_in_row0, out);
            *two_in_row0 = saved;
            filled[row] -= 1;
        }
    }
    let mut out = SytCounts {
        count: 0,
        g1_row: 0,
        g1_col: 0,
    };
    let mut filled = vec![0; lam.parts.len()];
    fill(&lam.parts, &mut filled, 1, lam.n(), &mut None, &mut out);
    if lam.n() == 1 {
        // A single box: g_1 does not exist; count it as the trivial row.
        out.g1_row = 1;
    }
    out
}

/// The partitions of n−1 obtained by removing one corner, top corner first.
pub fn branch_restrict(lam: &Partition) -> Vec<Partition> {
    corners(lam).into_iter().map(|(mu, _)| mu).collect()
}

/// Each μ = λ − corner with the content of the removed cell.
fn corners(lam: &Partition) -> Vec<(Partition, i64)> {
    let k = lam.parts.len();
    (0..k)
        .filter(|&i| i + 1 == k || lam.parts[i] > lam.parts[i + 1])
        .map(|i| {
            let mut parts = lam.parts.clone();
            parts[i] -= 1;
            if parts[i] == 0 {
                parts.pop();
            }
            (Partition { parts }, lam.corner_content(i))
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ModuleSignature {
    pub dim: usize,
    pub g1_mult_r: usize,
    pub g1_mult_neg: usize,
    /// Dimensions of the L_n-eigenspaces, sorted ascending.
    pub restriction_dims: Vec<usize>,
    /// (content c, dim) of each restriction piece, read off from the L_n-eigenvalue r^{2c}.
    pub restriction_by_content: Vec<(i64, usize)>,
}

impl ModuleSignature {
    /// The fingerprint S^λ must have.
    pub fn of_partition(lam: &Partition) -> Self {
        let syt = enumerate_syt(lam);
        let mut restriction_by_content: Vec<(i64, usize)> = corners(lam)
            .iter()
            .map(|(mu, c)| (*c, hook_length_dim(mu) as usize))
            .collect();
        restriction_by_content.sort_unstable();
        let mut restriction_dims: Vec<usize> =
            restriction_by_content.iter().map(|&(_, d)| d).collect();
        restriction_dims.sort_unstable();
        ModuleSignature {
            dim: syt.count as usize,
            g1_mult_r: syt.g1_row as usize,
            g1_mult_neg: syt.g1_col as usize,
            restriction_dims,
            restriction_by_content,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        // Pieces with equal content share one L_n-eigenspace.
        let mut by_content = std::collections::BTreeMap::new();
        for &(c, d) in self
            .restriction_by_content
            .iter()
            .chain(&other.restriction_by_content)
        {
            *by_content.entry(c).or_insert(0) += d;
        }
        let mut restriction_dims: Vec<usize> = by_content.values().copied().collect();
        restriction_dims.sort_unstable();
        ModuleSignature {
            dim: self.dim + other.dim,
            g1_mult_r: self.g1_mult_r + other.g1_mult_r,
            g1_mult_neg: self.g1_mult_neg + other.g1_mult_neg,
            restriction_dims,
            restriction_by_content: by_content.into_iter().collect(),
        }
    }
}

fn scalar_shift<F: Field>(t: &Matrix<F>, c: &F) -> Matrix<F> {
    let id = Matrix::identity(t.rows(), c);
    t.sub(&id.scale(c)).expect("square")
}

/// Fingerprint of an invariant subspace W. Fails if W is not a module for the
/// Hecke algebra (some g_i does not satisfy g² + m g = 1 on W) or if the
/// Jucys–Murphy eigenspaces do not exhaust W.
pub fn subspace_signature<F: Field>(
    w: &SubspaceBasis<F>,
    rep: &RepSet<F>,
) -> Result<ModuleSignature, InvariantError> {
    let n = rep.n();
    let p = rep.params();
    let r = p.r();
    let k = w.dim();
    let g: Vec<Matrix<F>> = rep
        .generators()
        .iter()
        .map(|g| w.restrict(g))
        .collect::<Result<_, _>>()?;
    let id = Matrix::identity(k, r);
    for (i, gi) in g.iter().enumerate() {
        let quad = gi.mul(gi)?.add(&gi.scale(p.m()))?.sub(&id)?;
        if !quad.is_zero() {
            return Err(InvariantError::SelfCheck {
                n,
                what: format!("g_{} violates the Hecke quadratic on W", i + 1),
            });
        }
    }
    if k == 0 {
        return Ok(ModuleSignature {
            dim: 0,
            g1_mult_r: 0,
            g1_mult_neg: 0,
            restriction_dims: Vec::new(),
            restriction_by_content: Vec::new(),
        });
    }
    let eig_dim = |t: &Matrix<F>, c: &F| k - scalar_shift(t, c).rank();
    let g1_mult_r = eig_dim(&g[0], r);
    let g1_mult_neg = eig_dim(&g[0], &r.inv()?.neg());
    let mut jm = id.clone();
    for gi in g.iter().rev() {
        jm = jm.mul(gi)?;
    }
    for gi in &g {
        jm = jm.mul(gi)?;
    }
    let mut restriction_by_content = Vec::new();
    for c in -(n as i64 - 1)..=(n as i64 - 1) {
        let d = eig_dim(&jm, &r.pow(2 * c)?);
        if d > 0 {
            restriction_by_content.push((c, d));
        }
    }
    if restriction_by_content
        .iter()
        .map(|&(_, d)| d)
        .sum::<usize>()
        != k
    {
        return Err(InvariantError::SelfCheck {
            n,
            what: "Jucys-Murphy eigenspaces do not span W".into(),
        });
    }
    let mut restriction_dims: Vec<usize> = restriction_by_content.iter().map(|&(_, d)| d).collect();
    restriction_dims.sort_unstable();
    Ok(ModuleSignature {
        dim: k,
        g1_mult_r,
        g1_mult_neg,
        restriction_dims,
        restriction_by_content,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Identification {
    Module(Partition),
    Sum(Partition, Partition),
    /// No candidate, or more than one.
    Ambiguous(Vec<String>),
}

impl fmt::Display for Identification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identification::Module(p) => write!(f, "{p}"),
            Identification::Sum(a, b) => write!(f, "{a}+{b}"),
            Identification::Ambiguous(c) if c.is_empty() => write!(f, "unidentified"),
            Identification::Ambiguous(c) => write!(f, "ambiguous[{}]", c.join(" | ")),
        }
    }
}

impl Serialize for Identification {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The unique S^λ, λ ⊢ n, with this fingerprint.
pub fn identify_module(sig: &ModuleSignature, n: usize) -> Identification {
    let hits: Vec<Partition> = all_partitions(n)
        .into_iter()
        .filter(|lam| &ModuleSignature::of_partition(lam) == sig)
        .collect();
    match hits.as_slice() {
        [one] => Identification::Module(one.clone()),
        _ => Identification::Ambiguous(hits.iter().map(Partition::to_string).collect()),
    }
}

/// The unique unordered pair S^λ ⊕ S^μ with this fingerprint.
pub fn identify_sum(sig: &ModuleSignature, n: usize) -> Identification {
    let parts = all_partitions(n);
    let sigs: Vec<ModuleSignature> = parts.iter().map(ModuleSignature::of_partition).collect();
    let mut hits = Vec::new();
    for a in 0..parts.len() {
        for b in a..parts.len() {
            if &sigs[a].direct_sum(&sigs[b]) == sig {
                hits.push((parts[a].clone(), parts[b].clone()));
            }
        }
    }
    match hits.as_slice() {
        [(a, b)] => Identification::Sum(a.clone(), b.clone()),
        _ => Identification::Ambiguous(hits.iter().map(|(a, b)| format!("{a}+{b}")).collect()),
    }
}

fn part(v: Vec<usize>) -> Result<Partition, InvariantError> {
    Partition::new(v)
}

/// S^(n−2,1,1); at n = 3 this is (1,1,1).
fn hook_211(n: usize) -> Result<Partition, InvariantError> {
    let mut v = vec![1, 1];
    if n > 2 {
        v.insert(0, n - 2);
    }
    part(v)
}

/// The modules predicted for each t-row; with qⁿ = −1 (only allowed for t = −1):
/// the line S^(n), the summand S^(n−2,1,1), and K(n) as their sum.
pub fn classify_expected(
    n: usize,
    t_case: TCase,
    qn_is_minus_one: bool,
) -> Result<Vec<Identification>, InvariantError> {
    if qn_is_minus_one && t_case != TCase::NegOne {
        return Err(InvariantError::Precondition(format!(
            "q^n = -1 is only covered for t = -1, not {t_case}"
        )));
    }
    let trivial = part(vec![n])?;
    Ok(match t_case {
        TCase::InvQn => vec![Identification::Module(trivial)],
        TCase::InvSqrtQn | TCase::NegInvSqrtQn => {
            vec![Identification::Module(part(vec![n - 1, 1])?)]
        }
        TCase::InvQ => {
            if n < 4 {
                return Err(InvariantError::Precondition(
                    "S^(n-2,2) needs n >= 4".into(),
                ));
            }
            vec![Identification::Module(part(vec![n - 2, 2])?)]
        }
        TCase::NegOne if qn_is_minus_one => vec![
            Identification::Module(trivial.clone()),
            Identification::Module(hook_211(n)?),
            Identification::Sum(trivial, hook_211(n)?),
        ],
        TCase::NegOne => vec![Identification::Module(hook_211(n)?)],
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SubspaceRecord {
    pub label: String,
    pub dim: usize,
    pub identified: Identification,
    pub expected: Identification,
    pub signature: ModuleSignature,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub t_case: TCase,
    pub l_case: LCase,
    pub field: FieldDescriptor,
    pub k_n: usize,
    pub subspaces: Vec<SubspaceRecord>,
    pub checks: Vec<Check>,
    pub verdict: bool,
}

fn classify<F: Field>(
    rep: &RepSet<F>,
    t_case: TCase,
    l_case: LCase,
    pieces: Vec<(String, SubspaceBasis<F>, bool)>,
    expected: Vec<Identification>,
    mut checks: Vec<Check>,
    k_n: usize,
) -> Result<ClassificationReport, InvariantError> {
    let n = rep.n();
    let mut subspaces = Vec::new();
    for ((label, w, is_sum), exp) in pieces.into_iter().zip(expected) {
        let signature = subspace_signature(&w, rep)?;
        let identified = if is_sum {
            identify_sum(&signature, n)
        } else {
            identify_module(&signature, n)
        };
        checks.push(
            Check::new(format!("{label} is {exp}"), identified == exp)
                .with_detail(format!("identified {identified}")),
        );
        subspaces.push(SubspaceRecord {
            label,
            dim: w.dim(),
            identified,
            expected: exp,
            signature,
        });
    }
    let verdict = checks.iter().all(|c| c.pass);
    Ok(ClassificationReport {
        n,
        t_case,
        l_case,
        field: rep.params().field(),
        k_n,
        subspaces,
        checks,
        verdict,
    })
}

/// Builds the representation for the t-row, computes K(n) (and in the qⁿ = −1 case
/// its two summands), fingerprints each piece and compares with [`classify_expected`].
pub fn verify_main_theorem(
    n: usize,
    t_case: TCase,
    qn_is_minus_one: bool,
) -> Result<ClassificationReport, InvariantError> {
    let expected = classify_expected(n, t_case, qn_is_minus_one)?;
    let l_case = params_from_tq(t_case, n);
    if !qn_is_minus_one {
        let rep = RepSet::new(ParamSpec::<RatFunc>::ratfunc(n, l_case)?)?;
        let kn = compute_kn(&rep)?;
        let pieces = vec![(format!("K({n})"), kn.kn, false)];
        return classify(&rep, t_case, l_case, pieces, expected, Vec::new(), kn.k_n);
    }
    let rep = RepSet::new(ParamSpec::<CyclotomicElement>::cyclotomic(
        n,
        4 * n as u64,
        l_case,
    )?)?;
    let r = rep.params().r().clone();
    let kn = compute_kn(&rep)?;
    let line = span_of(n, &[onedim_vector(n, &r)?], &r)?;
    let s = s_subspace(n, &r)?;
    let gens = rep.generators();
    let checks = vec![
        Check::new("r^(2n) = -1", r.pow(2 * n as i64)? == r.from_int_like(-1)),
        Check::new("line is invariant", line.is_invariant_under(gens)?),
        Check::new("S is invariant", s.is_invariant_under(gens)?),
        Check::new(
            "line and S lie in K(n)",
            kn.kn.contains(&line)? && kn.kn.contains(&s)?,
        ),
        Check::new("line and S meet trivially", line.intersect(&s)?.is_zero()),
        Check::new("K(n) = line + S", line.sum(&s)? == kn.kn),
    ];
    let pieces = vec![
        ("line".to_string(), line, false),
        ("S".to_string(), s, false),
        (format!("K({n})"), kn.kn, true),
    ];
    classify(&rep, t_case, l_case, pieces, expected, checks, kn.k_n)
}

/// The dimension facts about Specht modules used when ruling modules out:
/// quoted values, SYT count = hook formula, branching preserves dimension, and
/// the list of λ ⊢ n (n = 7, 8, 9) outside the six small families whose
/// dimension does not exceed (n−1)(n−2)/2.
pub fn combinatorics_checks() -> Vec<Check> {
    let mut checks = Vec::new();
    let quoted: [(&[usize], u64); 7] = [
        (&[2, 2], 2),
        (&[3, 3], 5),
        (&[2, 2, 2], 5),
        (&[4, 3], 14),
        (&[2, 2, 2, 1], 14),
        (&[4, 4], 14),
        (&[2, 2, 2, 2], 14),
    ];
    for (parts, dim) in quoted {
        let lam = Partition {
            parts: parts.to_vec(),
        };
        checks.push(Check::new(
            format!("dim S^{lam} = {dim}"),
            hook_length_dim(&lam) == dim,
        ));
    }
    for n in 1..=9 {
        let parts = all_partitions(n);
        let syt_ok = parts.iter().all(|lam| {
            let s = enumerate_syt(lam);
            s.count == hook_length_dim(lam) && (n < 2 || s.count == s.g1_row + s.g1_col)
        });
        checks.push(Check::new(
            format!("SYT count = hook formula for all partitions of {n}"),
            syt_ok,
        ));
        let conj_ok = parts.iter().all(|lam| {
            let (a, b) = (enumerate_syt(lam), enumerate_syt(&lam.conjugate()));
            n < 2 || (a.count == b.count && a.g1_row == b.g1_col && a.g1_col == b.g1_row)
        });
        checks.push(Check::new(
            format!("conjugation swaps g1 counts for n = {n}"),
            conj_ok,
        ));
        if n >= 2 {
            let branch_ok = parts.iter().all(|lam| {
                branch_restrict(lam)
                    .iter()
                    .map(hook_length_dim)
                    .sum::<u64>()
                    == hook_length_dim(lam)
            });
            checks.push(Check::new(
                format!("branching preserves dimension for n = {n}"),
                branch_ok,
            ));
        }
    }
    for n in 7..=9usize {
        let bound = ((n - 1) * (n - 2) / 2) as u64;
        let mut small: Vec<Partition> =
            [vec![n], vec![n - 1, 1], vec![n - 2, 2], vec![n - 2, 1, 1]]
                .into_iter()
                .map(|v| Partition { parts: v })
                .collect();
        small.extend(small.clone().iter().map(Partition::conjugate));
        let mut low: Vec<String> = all_partitions(n)
            .into_iter()
            .filter(|lam| !small.contains(lam) && hook_length_dim(lam) <= bound)
            .map(|lam| format!("{lam}:{}", hook_length_dim(&lam)))
            .collect();
        low.sort();
        let expected: Vec<String> = match n {
            7 => vec!["(2,2,2,1):14".into(), "(4,3):14".into()],
            8 => vec!["(2,2,2,2):14".into(), "(4,4):14".into()],
            _ => vec![],
        };
        checks.push(
            Check::new(
                format!("partitions of {n} outside the small families with dim <= {bound}"),
                low == expected,
            )
            .with_detail(format!("[{}]", low.join(", "))),
        );
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn partition_validation_and_display() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![]).is_err());
        assert_eq!(p(&[3, 1, 1]).to_string(), "(3,1,1)");
        assert_eq!("(4,3)".parse::<Partition>().unwrap(), p(&[4, 3]));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=9).map(|n| all_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn hook_dims() {
        assert_eq!(hook_length_dim(&p(&[5])), 1);
        assert_eq!(hook_length_dim(&p(&[2, 2])), 2);
        assert_eq!(hook_length_dim(&p(&[3, 3])), 5);
        assert_eq!(hook_length_dim(&p(&[2, 2, 2])), 5);
        assert_eq!(hook_length_dim(&p(&[4, 3])), 14);
    }

    #[test]
    fn syt_splits() {
        assert_eq!(
            enumerate_syt(&p(&[2])),
            SytCounts {
                count: 1,
                g1_row: 1,
                g1_col: 0
            }
        );
        assert_eq!(
            enumerate_syt(&p(&[1, 1])),
            SytCounts {
                count: 1,
                g1_row: 0,
                g1_col: 1
            }
        );
        assert_eq!(
            enumerate_syt(&p(&[3, 2])),
            SytCounts {
                count: 5,
                g1_row: 3,
                g1_col: 2
            }
        );
    }

    #[test]
    fn branching() {
        assert_eq!(
            branch_restrict(&p(&[2, 2, 2, 1])),
            vec![p(&[2, 2, 1, 1]), p(&[2, 2, 2])]
        );
        assert_eq!(
            branch_restrict(&p(&[2, 2, 1, 1])),
            vec![p(&[2, 1, 1, 1]), p(&[2, 2, 1])]
        );
        assert_eq!(branch_restrict(&p(&[6])), vec![p(&[5])]);
        let mut twice: Vec<Partition> = branch_restrict(&p(&[4, 3]))
            .iter()
            .flat_map(branch_restrict)
            .collect();
        twice.sort();
        assert_eq!(twice, vec![p(&[3, 2]), p(&[3, 2]), p(&[4, 1])]);
    }

    #[test]
    fn identification_of_small_signatures() {
        let sig = ModuleSignature::of_partition(&p(&[5]));
        assert_eq!((sig.dim, sig.g1_mult_r, sig.g1_mult_neg), (1, 1, 0));
        assert_eq!(identify_module(&sig, 5), Identification::Module(p(&[5])));
        let sig = ModuleSignature::of_partition(&p(&[3, 2]));
        assert_eq!(identify_module(&sig, 5), Identification::Module(p(&[3, 2])));
        assert_eq!(
            identify_module(&ModuleSignature::of_partition(&p(&[2, 2, 1])), 5),
            Identification::Module(p(&[2, 2, 1]))
        );
        let sig = ModuleSignature::of_partition(&p(&[3, 1, 1]));
        assert_eq!(sig.restriction_dims, vec![3, 3]);
        assert_eq!(sig.restriction_by_content, vec![(-2, 3), (2, 3)]);
        assert_eq!(
            identify_module(&sig, 5),
            Identification::Module(p(&[3, 1, 1]))
        );
        let bogus = ModuleSignature {
            dim: 2,
            g1_mult_r: 1,
            g1_mult_neg: 1,
            restriction_dims: vec![2],
            restriction_by_content: vec![(0, 2)],
        };
        assert_eq!(
            identify_module(&bogus, 5),
            Identification::Ambiguous(vec![])
        );
    }

    #[test]
    fn subspace_signatures() {
        let rep = RepSet::new(ParamSpec::ratfunc(5, LCase::EqInvR2n3).unwrap()).unwrap();
        let kn = compute_kn(&rep).unwrap();
        let sig = subspace_signature(&kn.kn, &rep).unwrap();
        assert_eq!(sig, ModuleSignature::of_partition(&p(&[5])));
        assert_eq!(sig.restriction_dims, vec![1]);
        let rep = RepSet::new(ParamSpec::ratfunc(5, LCase::EqR).unwrap()).unwrap();
        let sig = subspace_signature(&compute_kn(&rep).unwrap().kn, &rep).unwrap();
        assert_eq!((sig.g1_mult_r, sig.g1_mult_neg), (3, 2));
        let rep = RepSet::new(ParamSpec::ratfunc(4, LCase::EqNegR3).unwrap()).unwrap();
        let sig = subspace_signature(&compute_kn(&rep).unwrap().kn, &rep).unwrap();
        let syt = enumerate_syt(&p(&[2, 1, 1]));
        assert_eq!(
            (sig.g1_mult_r as u64, sig.g1_mult_neg as u64),
            (syt.g1_row, syt.g1_col)
        );
    }

    #[test]
    fn signature_rejects_non_modules() {
        let rep = RepSet::new(ParamSpec::ratfunc(4, LCase::EqR).unwrap()).unwrap();
        let r = rep.params().r().clone();
        let whole = SubspaceBasis::full(6, &r);
        assert!(subspace_signature(&whole, &rep).is_err());
    }

    #[test]
    fn expected_outcomes() {
        assert_eq!(
            classify_expected(6, TCase::InvQ, false).unwrap(),
            vec![Identification::Module(p(&[4, 2]))]
        );
        assert_eq!(
            classify_expected(5, TCase::InvQn, false).unwrap(),
            vec![Identification::Module(p(&[5]))]
        );
        let three = classify_expected(5, TCase::NegOne, true).unwrap();
        assert_eq!(three[2], Identification::Sum(p(&[5]), p(&[3, 1, 1])));
        assert!(classify_expected(5, TCase::InvQ, true).is_err());
    }

    #[test]
    fn main_theorem_small_cases() {
        let rep = verify_main_theorem(5, TCase::InvQ, false).unwrap();
        assert!(rep.verdict, "{rep:?}");
        assert_eq!(
            rep.subspaces[0].identified,
            Identification::Module(p(&[3, 2]))
        );
        let rep = verify_main_theorem(5, TCase::NegOne, false).unwrap();
        assert!(rep.verdict);
        assert_eq!(rep.k_n, 6);
        let rep = verify_main_theorem(4, TCase::NegOne, true).unwrap();
        assert!(rep.verdict, "{rep:?}");
        let dims: Vec<usize> = rep.subspaces.iter().map(|s| s.dim).collect();
        assert_eq!(dims, vec![1, 3, 4]);
    }

    #[test]
    fn combinatorics_all_pass() {
        let failed: Vec<_> = combinatorics_checks()
            .into_iter()
            .filter(|c| !c.pass)
            .collect();
        assert!(failed.is_empty(), "{failed:?}");
    }
}
