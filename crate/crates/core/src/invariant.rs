//! K(n) and the explicit vectors spanning the invariant subspaces of V^(n).

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fields::{Field, FieldError, Rational};
use crate::linalg::{LinalgError, Matrix, SubspaceBasis};
use crate::lkrep::{lk_dimension, positive_roots, LCase, LkError, ParamSpec, RepSet, RootIndex};
use crate::report::Check;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Lk(#[from] LkError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("K({n}) self-check failed: {what}")]
    SelfCheck { n: usize, what: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown proof-trace case {0:?}")]
    UnknownCase(String),
}

/// A vector of V^(n) as a sparse combination of the w_{s,t}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorExpr<F: Field> {
    n: usize,
    coeffs: BTreeMap<RootIndex, F>,
}

impl<F: Field> VectorExpr<F> {
    pub fn zero(n: usize) -> Self {
        VectorExpr {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    /// Sums the terms `c·w_{s,t}`; repeated roots accumulate and zero coefficients are dropped.
    pub fn from_terms(n: usize, terms: Vec<(usize, usize, F)>) -> Result<Self, InvariantError> {
        let mut out = VectorExpr::zero(n);
        for (s, t, c) in terms {
            let root = RootIndex::new(s, t)?;
            if !root.is_valid_for(n) {
                return Err(LkError::InvalidRoot { s, t }.into());
            }
            out.add_term(root, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, root: RootIndex, c: F) {
        let sum = match self.coeffs.remove(&root) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(root, sum);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficient(&self, s: usize, t: usize) -> Option<&F> {
        RootIndex::new(s, t).ok().and_then(|r| self.coeffs.get(&r))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RootIndex, &F)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coordinates in the lexicographic basis of V^(n).
    pub fn to_row(&self, like: &F) -> Vec<F> {
        let mut row = vec![like.zero_like(); lk_dimension(self.n)];
        for (root, c) in &self.coeffs {
            row[root.position(self.n)] = c.clone();
        }
        row
    }

    pub fn from_row(n: usize, row: &[F]) -> Result<Self, InvariantError> {
        let roots = positive_roots(n)?;
        if row.len() != roots.len() {
            return Err(LinalgError::DimensionMismatch {
                context: "vector",
                expected: roots.len(),
                found: row.len(),
            }
            .into());
        }
        let mut out = VectorExpr::zero(n);
        for (root, c) in roots.into_iter().zip(row) {
            out.add_term(root, c.clone());
        }
        Ok(out)
    }

    /// The same vector inside V^(n') for n' ≥ n, where V^(n) is spanned by the w_{s,t} with t ≤ n.
    pub fn embed(&self, n: usize) -> Result<Self, InvariantError> {
        if n < self.n {
            return Err(InvariantError::Precondition(format!(
                "cannot embed level {} into level {n}",
                self.n
            )));
        }
        Ok(VectorExpr {
            n,
            coeffs: self.coeffs.clone(),
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = VectorExpr::zero(self.n);
        for (root, x) in &self.coeffs {
            out.add_term(*root, x.mul(c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, InvariantError> {
        if self.n != other.n {
            return Err(LinalgError::DimensionMismatch {
                context: "vector sum",
                expected: self.n,
                found: other.n,
            }
            .into());
        }
        let mut out = self.clone();
        for (root, x) in &other.coeffs {
            out.add_term(*root, x.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, InvariantError> {
        self.add(&other.scale(&other.unit().neg()))
    }

    fn unit(&self) -> F {
        self.coeffs
            .values()
            .next()
            .map(|c| c.one_like())
            .expect("unit() needs a nonzero vector")
    }

    /// `T·v` for an operator on V^(n).
    pub fn apply(&self, t: &Matrix<F>) -> Result<Self, InvariantError> {
        let like = t.zero_element();
        VectorExpr::from_row(self.n, &t.apply(&self.to_row(like))?)
    }
}

impl<F: Field + fmt::Display> fmt::Display for VectorExpr<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(root, c)| format!("({c})*{root}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Span of a list of vectors inside V^(n).
pub fn span_of<F: Field>(
    n: usize,
    vectors: &[VectorExpr<F>],
    like: &F,
) -> Result<SubspaceBasis<F>, InvariantError> {
    let rows = vectors
        .iter()
        .map(|v| v.embed(n).map(|v| v.to_row(like)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SubspaceBasis::from_vectors(lk_dimension(n), rows, like)?)
}

pub fn embed_subrep<F: Field>(v: &VectorExpr<F>) -> Result<VectorExpr<F>, InvariantError> {
    v.embed(v.n() + 1)
}

/// Embeds a subspace of V^(n−1) into V^(n).
pub fn embed_subspace<F: Field>(
    w: &SubspaceBasis<F>,
    from: usize,
    to: usize,
) -> Result<SubspaceBasis<F>, InvariantError> {
    let like = w.basis().zero_element().clone();
    let vectors = w
        .vectors()
        .iter()
        .map(|row| VectorExpr::from_row(from, row))
        .collect::<Result<Vec<_>, _>>()?;
    span_of(to, &vectors, &like)
}

/// The level-(n−1) subspace V^(n−1) ⊂ V^(n).
pub fn lower_level<F: Field>(n: usize, like: &F) -> Result<SubspaceBasis<F>, InvariantError> {
    let roots = positive_roots(n)?;
    let d = roots.len();
    let rows = roots
        .iter()
        .filter(|root| root.t() < n)
        .map(|root| {
            let mut row = vec![like.zero_like(); d];
            row[root.position(n)] = like.one_like();
            row
        })
        .collect();
    Ok(SubspaceBasis::from_vectors(d, rows, like)?)
}

#[derive(Clone, Debug)]
pub struct KnResult<F: Field> {
    pub params: ParamSpec<F>,
    pub kn: SubspaceBasis<F>,
    pub k_n: usize,
}

/// K(n) = ∩ ker ν(C_ij), checked to be ν_i-stable and killed by every ν(e_i).
///
/// The kernel of each rank-deficient C_ij is the annihilator of its row space, so
/// K(n) is the kernel of all those row spaces stacked.
pub fn compute_kn<F: Field>(rep: &RepSet<F>) -> Result<KnResult<F>, InvariantError> {
    let n = rep.n();
    let dim = rep.dim();
    let like = rep.params().r().zero_like();
    let mut rows = Vec::new();
    for (_, c) in rep.c_all() {
        rows.extend(SubspaceBasis::from_matrix_rows(c).vectors());
    }
    let stacked = Matrix::from_rows(rows, dim, &like)?;
    let kn = stacked.kernel();
    if !kn.is_invariant_under(rep.generators())? {
        return Err(InvariantError::SelfCheck {
            n,
            what: "not invariant under the generators".into(),
        });
    }
    if !kn.is_annihilated_by(rep.e_all())? {
        return Err(InvariantError::SelfCheck {
            n,
            what: "not annihilated by the e_i".into(),
        });
    }
    let k_n = kn.dim();
    Ok(KnResult {
        params: rep.params().clone(),
        kn,
        k_n,
    })
}

fn rp<F: Field>(r: &F, k: i64) -> F {
    r.pow(k).expect("r is nonzero")
}

/// Σ_{s<t} r^{s+t} w_{s,t}.
pub fn onedim_vector<F: Field>(n: usize, r: &F) -> Result<VectorExpr<F>, InvariantError> {
    let terms = positive_roots(n)?
        .into_iter()
        .map(|x| (x.s(), x.t(), rp(r, (x.s() + x.t()) as i64)))
        .collect();
    VectorExpr::from_terms(n, terms)
}

/// The invariant lines of V^(3): w12 + r w13 + r² w23 when l = 1/r³ and
/// w12 − (1/r) w13 + (1/r²) w23 when l = −r³ (both if these coincide).
pub fn n3_onedim_vectors<F: Field>(p: &ParamSpec<F>) -> Result<Vec<VectorExpr<F>>, InvariantError> {
    if p.n() != 3 {
        return Err(InvariantError::Precondition(
            "n3_onedim_vectors needs n = 3".into(),
        ));
    }
    let r = p.r();
    let one = r.one_like();
    let mut out = Vec::new();
    if p.l() == &rp(r, -3) {
        out.push(VectorExpr::from_terms(
            3,
            vec![(1, 2, one.clone()), (1, 3, r.clone()), (2, 3, rp(r, 2))],
        )?);
    }
    if p.l() == &rp(r, 3).neg() {
        out.push(VectorExpr::from_terms(
            3,
            vec![(1, 2, one), (1, 3, rp(r, -1).neg()), (2, 3, rp(r, -2))],
        )?);
    }
    Ok(out)
}

/// v_1..v_{n−1}, with ε = +1 for l = 1/r^{n−3} and ε = −1 for l = −1/r^{n−3}.
pub fn v_vectors<F: Field>(
    p: &ParamSpec<F>,
    epsilon: i64,
) -> Result<Vec<VectorExpr<F>>, InvariantError> {
    if epsilon.abs() != 1 {
        return Err(InvariantError::Precondition(format!(
            "epsilon must be ±1, got {epsilon}"
        )));
    }
    let n = p.n();
    let r = p.r();
    let r_inv = rp(r, -1);
    let eps = r.from_int_like(epsilon);
    let mut out = Vec::with_capacity(n - 1);
    for i in 1..n {
        let mut terms = vec![(i, i + 1, r_inv.sub(&p.l().inv()?))];
        for s in i + 2..=n {
            let c = rp(r, (s - i) as i64 - 2);
            terms.push((i, s, c.clone()));
            terms.push((i + 1, s, c.mul(&r_inv).neg()));
        }
        for t in 1..i {
            let c = eps.mul(&rp(r, n as i64 - i as i64 - 2 + t as i64));
            terms.push((t, i, c.clone()));
            terms.push((t, i + 1, c.mul(&r_inv).neg()));
        }
        out.push(VectorExpr::from_terms(n, terms)?);
    }
    Ok(out)
}

/// u_1, u_2, u_3 spanning the 3-dimensional invariant subspace of V^(4) at l = −r³.
pub fn u_vectors_n4<F: Field>(r: &F) -> Result<Vec<VectorExpr<F>>, InvariantError> {
    let one = r.one_like();
    let ri = rp(r, -1);
    let u1 = vec![
        (2, 3, r.clone()),
        (1, 3, one.clone()),
        (3, 4, ri.add(&rp(r, -3))),
        (2, 4, one.neg()),
        (1, 4, ri.neg()),
    ];
    let u2 = vec![
        (1, 2, r.neg()),
        (1, 3, rp(r, 2).neg()),
        (3, 4, ri.neg()),
        (2, 4, rp(r, -2).neg()),
        (1, 4, r.add(&ri)),
    ];
    let u3 = vec![
        (1, 2, r.add(&rp(r, 3))),
        (2, 3, ri.clone()),
        (1, 3, one.neg()),
        (2, 4, one),
        (1, 4, r.neg()),
    ];
    [u1, u2, u3]
        .into_iter()
        .map(|t| VectorExpr::from_terms(4, t))
        .collect()
}

/// At l = r: the two vectors spanning K(4) for n = 4, or the n−2 vectors added to K(n−1) for n ≥ 5.
pub fn w_vectors<F: Field>(n: usize, r: &F) -> Result<Vec<VectorExpr<F>>, InvariantError> {
    let one = r.one_like();
    let ri = rp(r, -1);
    if n < 4 {
        return Err(InvariantError::Precondition(format!(
            "w-vectors need n >= 4, got {n}"
        )));
    }
    if n == 4 {
        let w1 = vec![
            (1, 4, one.clone()),
            (2, 4, ri.neg()),
            (2, 3, one.clone()),
            (1, 3, r.neg()),
        ];
        let w2 = vec![
            (2, 4, one.clone()),
            (3, 4, ri.neg()),
            (1, 3, one),
            (1, 2, r.neg()),
        ];
        return [w1, w2]
            .into_iter()
            .map(|t| VectorExpr::from_terms(4, t))
            .collect();
    }
    let c = rp(r, n as i64 - 4);
    let mut out = Vec::with_capacity(n - 2);
    for k in 1..=n - 2 {
        let mut terms = vec![(k, n, one.clone()), (k + 1, n, ri.neg())];
        if k == 1 {
            terms.push((2, 3, c.clone()));
            terms.push((1, 3, c.mul(r).neg()));
        } else {
            terms.push((1, k + 1, c.clone()));
            terms.push((1, k, c.mul(r).neg()));
        }
        out.push(VectorExpr::from_terms(n, terms)?);
    }
    Ok(out)
}

/// V_k^(n) = w_{k+1,n} − r w_{k,n} + r^{n−k} w_{k,k+1} for k = 1..n−2.
pub fn upper_v_vectors<F: Field>(n: usize, r: &F) -> Result<Vec<VectorExpr<F>>, InvariantError> {
    if n < 3 {
        return Err(InvariantError::Precondition(format!(
            "V-vectors need n >= 3, got {n}"
        )));
    }
    (1..=n - 2)
        .map(|k| {
            VectorExpr::from_terms(
                n,
                vec![
                    (k + 1, n, r.one_like()),
                    (k, n, r.neg()),
                    (k, k + 1, rp(r, (n - k) as i64)),
                ],
            )
        })
        .collect()
}

fn upper_v<F: Field>(
    level: usize,
    k: usize,
    r: &F,
    ambient: usize,
) -> Result<VectorExpr<F>, InvariantError> {
    upper_v_vectors(level, r)?[k - 1].embed(ambient)
}

/// 𝒮 = span{V_i^(j) : 3 ≤ j ≤ n, 1 ≤ i ≤ j−2}, all embedded in V^(n).
pub fn s_subspace<F: Field>(n: usize, r: &F) -> Result<SubspaceBasis<F>, InvariantError> {
    let mut vectors = Vec::new();
    for j in 3..=n {
        vectors.extend(upper_v_vectors(j, r)?);
    }
    span_of(n, &vectors, &r.zero_like())
}

/// The action identities of the g_i on the V_k^(n) at l = −r³, plus the two
/// families g_{n−1}V_k^(j) = r V_k^(j) (j ≤ n−2) and g_{n−1}V_k^(n−1) = V_k^(n).
pub fn lemma4_check<F: Field>(rep: &RepSet<F>) -> Result<Vec<Check>, InvariantError> {
    let n = rep.n();
    let p = rep.params();
    if n < 5 {
        return Err(InvariantError::Precondition(format!(
            "lemma4_check needs n >= 5, got {n}"
        )));
    }
    if !p.l_matches(LCase::EqNegR3) {
        return Err(InvariantError::Precondition(
            "lemma4_check needs l = -r^3".into(),
        ));
    }
    let r = p.r();
    let ri = rp(r, -1);
    let v = |level: usize, k: usize| upper_v(level, k, r, n);
    let mut checks = Vec::new();
    for k in 1..=n - 2 {
        let vk = v(n, k)?;
        for i in 1..n {
            let image = vk.apply(rep.nu(i))?;
            let (label, expected) = if k >= 2 && i == k - 1 {
                let c = rp(r, n as i64 - k as i64 - 1);
                (
                    "g_{k-1}",
                    v(n, k - 1)?
                        .add(&vk.scale(r))?
                        .sub(&v(k + 1, k - 1)?.scale(&c))?,
                )
            } else if i == k {
                ("g_k", vk.scale(&ri.neg()))
            } else if i == k + 1 && k < n - 2 {
                let c = rp(r, n as i64 - k as i64 - 1);
                (
                    "g_{k+1}",
                    v(n, k + 1)?
                        .add(&vk.scale(r))?
                        .sub(&v(k + 2, k)?.scale(&c))?,
                )
            } else if i == n - 1 && k == n - 2 {
                ("g_{n-1} on V_{n-2}", vk.scale(&ri.neg()))
            } else if i == n - 1 {
                ("g_{n-1}", v(n - 1, k)?.sub(&vk.scale(p.m()))?)
            } else {
                ("g_i scalar", vk.scale(r))
            };
            checks.push(Check::new(
                format!("lemma4 n={n} k={k} i={i} ({label})"),
                image == expected,
            ));
        }
    }
    for j in 3..=n - 2 {
        for k in 1..=j - 2 {
            let vkj = v(j, k)?;
            let ok = vkj.apply(rep.nu(n - 1))? == vkj.scale(r);
            checks.push(Check::new(
                format!("g_{{n-1}} V_{k}^({j}) = r V_{k}^({j}) at n={n}"),
                ok,
            ));
        }
    }
    for k in 1..=n - 3 {
        let ok = v(n - 1, k)?.apply(rep.nu(n - 1))? == v(n, k)?;
        checks.push(Check::new(
            format!("g_{{n-1}} V_{k}^({}) = V_{k}^({n})", n - 1),
            ok,
        ));
    }
    Ok(checks)
}

/// k(n) for rational r and l.
pub fn rational_kn(n: usize, r: &Rational, l: &Rational) -> Result<usize, InvariantError> {
    let rep = RepSet::new(ParamSpec::rational(n, r.clone(), l.clone())?)?;
    Ok(compute_kn(&rep)?.k_n)
}

/// Whether l lies on the reducibility locus for this n (and, for n = 3, on {−r³, 1/r³, −1, 1}).
pub fn on_locus(n: usize, r: &Rational, l: &Rational) -> bool {
    let mut locus: Vec<Rational> = LCase::LOCUS
        .iter()
        .filter_map(|case| case.monomial(n).eval(r).ok())
        .collect();
    if n == 3 {
        locus.extend([r.pow(3).map(|x| x.neg()), r.pow(-3)].into_iter().flatten());
        locus.extend([Rational::one(), Rational::from_int(-1)]);
    }
    locus.contains(l)
}

fn draw_rational(rng: &mut ChaCha8Rng) -> Rational {
    let a = rng.gen_range(-12i64..=12);
    let b = rng.gen_range(1i64..=12);
    Rational::new(a, b).expect("nonzero denominator")
}

/// Random rational (r, l) off the reducibility locus must give K(n) = 0.
pub fn genericity_probe(n: usize, trials: usize, seed: u64) -> Result<Vec<Check>, InvariantError> {
    if trials == 0 {
        return Err(InvariantError::Precondition("trials must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut checks = Vec::with_capacity(trials);
    for trial in 0..trials {
        let r = loop {
            let r = draw_rational(&mut rng);
            if !r.is_zero() && r.abs() != Rational::one() {
                break r;
            }
        };
        let l = loop {
            let l = draw_rational(&mut rng);
            if !l.is_zero() && !on_locus(n, &r, &l) {
                break l;
            }
        };
        let k = rational_kn(n, &r, &l)?;
        checks.push(
            Check::new(format!("genericity n={n} trial={trial}"), k == 0)
                .with_detail(format!("r={r} l={l} k(n)={k}")),
        );
    }
    Ok(checks)
}

/// A displayed vector together with its claimed membership.
#[derive(Clone, Debug)]
pub struct ProofTrace<F: Field> {
    pub label: String,
    pub vector: VectorExpr<F>,
    pub in_kn: bool,
    /// Claimed membership in the embedded K(n−1), when the claim is made.
    pub in_previous: Option<bool>,
}

pub const PROOF_TRACE_CASES: [&str; 2] = ["l_eq_r_n8", "l_eq_neg_r3_n8"];

/// The seed vector at n = 8, its displayed image under ν_7ν_6ν_5ν_4, and the claims about both.
pub fn proof_trace_vectors<F: Field>(
    case: &str,
    r: &F,
) -> Result<(VectorExpr<F>, Vec<ProofTrace<F>>), InvariantError> {
    let one = r.one_like();
    let ri = rp(r, -1);
    let (seed, image) = match case {
        "l_eq_r_n8" => (
            vec![
                (1, 2, rp(r, 2)),
                (1, 3, r.neg()),
                (3, 4, one.clone()),
                (2, 4, r.neg()),
            ],
            vec![
                (1, 2, rp(r, 6)),
                (1, 3, rp(r, 5).neg()),
                (3, 8, one),
                (2, 8, r.neg()),
            ],
        ),
        "l_eq_neg_r3_n8" => (
            vec![(2, 3, r.neg()), (3, 4, ri.neg()), (2, 4, one.clone())],
            vec![(2, 3, rp(r, 5).neg()), (3, 8, ri.neg()), (2, 8, one)],
        ),
        other => return Err(InvariantError::UnknownCase(other.into())),
    };
    let seed = VectorExpr::from_terms(8, seed)?;
    let image = VectorExpr::from_terms(8, image)?;
    let traces = vec![
        ProofTrace {
            label: format!("{case} seed"),
            vector: seed.clone(),
            in_kn: true,
            in_previous: None,
        },
        ProofTrace {
            label: format!("{case} image"),
            vector: image,
            in_kn: true,
            in_previous: Some(false),
        },
    ];
    Ok((seed, traces))
}

/// Runs the proof-trace claims against K(8) and the embedded K(7).
pub fn proof_trace_check<F: Field>(
    case: &str,
    rep8: &RepSet<F>,
    k8: &KnResult<F>,
    k7: &KnResult<F>,
) -> Result<Vec<Check>, InvariantError> {
    let r = rep8.params().r();
    let like = r.zero_like();
    let (seed, traces) = proof_trace_vectors(case, r)?;
    let mut pushed = seed.clone();
    for i in 4..=7 {
        pushed = pushed.apply(rep8.nu(i))?;
    }
    let mut checks = vec![Check::new(
        format!("{case}: nu_7 nu_6 nu_5 nu_4 maps the seed to the displayed image"),
        pushed == traces[1].vector,
    )];
    let k7_up = embed_subspace(&k7.kn, 7, 8)?;
    for trace in &traces {
        let row = trace.vector.to_row(&like);
        let in_kn = k8.kn.contains_vector(&row)?;
        checks.push(Check::new(
            format!("{}: in K(8) = {}", trace.label, trace.in_kn),
            in_kn == trace.in_kn,
        ));
        if let Some(claim) = trace.in_previous {
            let in_prev = k7_up.contains_vector(&row)?;
            checks.push(Check::new(
                format!("{}: in K(7) = {claim}", trace.label),
                in_prev == claim,
            ));
        }
    }
    Ok(checks)
}
