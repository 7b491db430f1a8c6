//! Named verification suites over a range of n, as run by the `lk` binary.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::fields::{CyclotomicElement, Field, FieldError, RatFunc, Rational};
use crate::invariant::{
    compute_kn, genericity_probe, lemma4_check, proof_trace_check, InvariantError,
    PROOF_TRACE_CASES,
};
use crate::lkrep::{
    params_from_tq, relation_suite, LCase, LaurentMonomial, LkError, ParamSpec, RepSet, TCase,
};
use crate::report::{CaseReport, Check, SuiteReport};
use crate::specht::verify_main_theorem;

/// Largest n accepted by default.
pub const DESK_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Lk(#[from] LkError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl SuiteError {
    /// Process exit code for an aborted run.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Kernels,
    Classify,
    MainTheorem,
    Genericity,
    Lemma4,
    ProofTraces,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Relations,
        Suite::Kernels,
        Suite::Classify,
        Suite::MainTheorem,
        Suite::Genericity,
        Suite::Lemma4,
        Suite::ProofTraces,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Kernels => "kernels",
            Suite::Classify => "classify",
            Suite::MainTheorem => "main-theorem",
            Suite::Genericity => "genericity",
            Suite::Lemma4 => "lemma4",
            Suite::ProofTraces => "proof-traces",
        }
    }

    /// Suites that compute kernels are subject to the desk-scale guard.
    pub fn bears_kernels(&self) -> bool {
        !matches!(self, Suite::Relations)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| SuiteError::Config(format!("unknown suite {s:?}")))
    }
}

/// Where r lives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldChoice {
    /// r is the indeterminate of Q(r).
    RatFunc,
    /// r is a primitive m-th root of unity.
    Cyclotomic(u64),
    /// r is a primitive 4n-th root of unity, so r^{2n} = −1 at every n of the range.
    CyclotomicFourN,
    /// r is this rational number.
    Rational(Rational),
}

impl FieldChoice {
    fn cyclotomic_index(&self, n: usize) -> Option<u64> {
        match self {
            FieldChoice::Cyclotomic(m) => Some(*m),
            FieldChoice::CyclotomicFourN => Some(4 * n as u64),
            _ => None,
        }
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::RatFunc => write!(f, "ratfunc"),
            FieldChoice::Cyclotomic(m) => write!(f, "cyclotomic:{m}"),
            FieldChoice::CyclotomicFourN => write!(f, "cyclotomic:4n"),
            FieldChoice::Rational(q) => write!(f, "rational:{q}"),
        }
    }
}

/// `ratfunc`, `cyclotomic:<m>`, `cyclotomic:4n` or `rational:<p>/<q>`.
impl FromStr for FieldChoice {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SuiteError::Config(format!("unknown field {s:?}"));
        if s == "ratfunc" {
            return Ok(FieldChoice::RatFunc);
        }
        if let Some(m) = s.strip_prefix("cyclotomic:") {
            if m == "4n" {
                return Ok(FieldChoice::CyclotomicFourN);
            }
            let m: u64 = m.parse().map_err(|_| bad())?;
            crate::fields::FieldDescriptor::cyclotomic(m)?;
            return Ok(FieldChoice::Cyclotomic(m));
        }
        if let Some(q) = s.strip_prefix("rational:") {
            return Ok(FieldChoice::Rational(q.parse()?));
        }
        Err(bad())
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub n_min: usize,
    pub n_max: usize,
    pub l_case: Option<LCase>,
    pub t_case: Option<TCase>,
    pub field: FieldChoice,
    pub seed: u64,
    pub trials: usize,
    /// Upper bound on n for kernel-bearing suites.
    pub max_n: usize,
}

impl SuiteConfig {
    pub fn new(suite: Suite, n_min: usize, n_max: usize) -> Self {
        SuiteConfig {
            suite,
            n_min,
            n_max,
            l_case: None,
            t_case: None,
            field: FieldChoice::RatFunc,
            seed: 0,
            trials: 5,
            max_n: DESK_MAX_N,
        }
    }

    fn validate(&self) -> Result<(), SuiteError> {
        if self.n_min > self.n_max {
            return Ok(());
        }
        if self.n_min < 3 {
            return Err(SuiteError::Config(format!(
                "n must be >= 3, got {}",
                self.n_min
            )));
        }
        if self.suite.bears_kernels() && self.n_max > self.max_n {
            return Err(SuiteError::Config(format!(
                "n = {} exceeds the desk-scale limit {} (raise it with LK_MAX_N or --allow-large)",
                self.n_max, self.max_n
            )));
        }
        if self.l_case.is_some() && self.t_case.is_some() {
            return Err(SuiteError::Config(
                "give at most one of an l-case and a t-case".into(),
            ));
        }
        Ok(())
    }

    /// The l-cases to sweep: the one requested, or the suite's default list.
    fn l_cases(&self) -> Vec<LCase> {
        if let Some(l) = self.l_case {
            return vec![l];
        }
        if let Some(t) = self.t_case {
            return vec![params_from_tq(t, 0)];
        }
        let mut all = LCase::LOCUS.to_vec();
        if self.suite == Suite::Relations {
            all.push(LCase::Explicit(LaurentMonomial::new(1, 5)));
        }
        all
    }
}

/// k(n) as predicted for the loci, when a prediction exists for this field.
pub fn expected_kn(n: usize, case: LCase, field: &FieldChoice) -> Option<usize> {
    let generic = matches!(field, FieldChoice::RatFunc);
    let four_n = field.cyclotomic_index(n) == Some(4 * n as u64);
    match case {
        LCase::EqR if generic && n >= 4 => Some(n * (n - 3) / 2),
        LCase::EqNegR3 if generic && n >= 3 => Some((n - 1) * (n - 2) / 2),
        LCase::EqNegR3 if four_n && n >= 4 => Some(1 + (n - 1) * (n - 2) / 2),
        LCase::EqInvR2n3 if generic => Some(1),
        LCase::EqInvRn3 | LCase::EqNegInvRn3 if generic => Some(n - 1),
        _ => None,
    }
}

struct CaseOutcome {
    report: CaseReport,
    checks: Vec<Check>,
}

fn prefixed(n: usize, case: &str, checks: Vec<Check>) -> Vec<Check> {
    checks
        .into_iter()
        .map(|mut c| {
            c.name = format!("n={n} {case}: {}", c.name);
            c
        })
        .collect()
}

fn run_l_case<F: Field>(
    cfg: &SuiteConfig,
    n: usize,
    r: F,
    case: LCase,
) -> Result<CaseOutcome, SuiteError> {
    let rep = RepSet::new(ParamSpec::with_case(n, r, case)?)?;
    let field = rep.params().field().to_string();
    let l = Some(rep.params().l().to_string());
    let tag = case.tag();
    let (k_n, checks) = match cfg.suite {
        Suite::Relations => (None, relation_suite(&rep)?),
        Suite::Kernels => {
            let kn = compute_kn(&rep)?;
            let mut checks = vec![Check::new(
                "K(n) is invariant and killed by every e_i",
                true,
            )];
            if let Some(k) = expected_kn(n, case, &cfg.field) {
                checks.push(
                    Check::new(format!("k(n) = {k}"), kn.k_n == k)
                        .with_detail(format!("computed {}", kn.k_n)),
                );
            }
            (Some(kn.k_n), checks)
        }
        Suite::Lemma4 => (None, lemma4_check(&rep)?),
        _ => unreachable!("dispatched elsewhere"),
    };
    let report = CaseReport {
        n,
        field,
        case: tag.clone(),
        l,
        k_n,
        subspaces: Vec::new(),
    };
    Ok(CaseOutcome {
        report,
        checks: prefixed(n, &tag, checks),
    })
}

fn dispatch_l_case(cfg: &SuiteConfig, n: usize, case: LCase) -> Result<CaseOutcome, SuiteError> {
    match &cfg.field {
        FieldChoice::RatFunc => run_l_case(cfg, n, RatFunc::indeterminate(), case),
        FieldChoice::Rational(q) => run_l_case(cfg, n, q.clone(), case),
        other => {
            let m = other.cyclotomic_index(n).expect("cyclotomic");
            run_l_case(cfg, n, CyclotomicElement::generator(m)?, case)
        }
    }
}

fn run_main_theorem(n: usize, t: TCase, qn_minus_one: bool) -> Result<CaseOutcome, SuiteError> {
    let rep = verify_main_theorem(n, t, qn_minus_one)?;
    let case = if qn_minus_one {
        format!("{t} q^n=-1")
    } else {
        t.to_string()
    };
    let mut checks = rep.checks.clone();
    checks.push(Check::new("verdict", rep.verdict));
    let report = CaseReport {
        n,
        field: rep.field.to_string(),
        case: case.clone(),
        l: Some(rep.l_case.tag()),
        k_n: Some(rep.k_n),
        subspaces: rep.subspaces,
    };
    Ok(CaseOutcome {
        report,
        checks: prefixed(n, &case, checks),
    })
}

fn qn_minus_one(cfg: &SuiteConfig, n: usize) -> Result<bool, SuiteError> {
    match &cfg.field {
        FieldChoice::RatFunc => Ok(false),
        f if f.cyclotomic_index(n) == Some(4 * n as u64) => Ok(true),
        f => Err(SuiteError::Config(format!(
            "classification runs over ratfunc or cyclotomic:4n (r^(2n) = -1), not {f} at n = {n}"
        ))),
    }
}

fn run_one_n(cfg: &SuiteConfig, n: usize) -> Result<Vec<CaseOutcome>, SuiteError> {
    match cfg.suite {
        Suite::Relations | Suite::Kernels => cfg
            .l_cases()
            .into_iter()
            .map(|case| dispatch_l_case(cfg, n, case))
            .collect(),
        Suite::Lemma4 => {
            if n < 5 {
                return Err(SuiteError::Config(format!("lemma4 needs n >= 5, got {n}")));
            }
            if cfg.l_case.is_some_and(|l| l != LCase::EqNegR3)
                || cfg.t_case.is_some_and(|t| t != TCase::NegOne)
            {
                return Err(SuiteError::Config("lemma4 runs at l = -r^3 only".into()));
            }
            Ok(vec![dispatch_l_case(cfg, n, LCase::EqNegR3)?])
        }
        Suite::Classify | Suite::MainTheorem => {
            let minus_one = qn_minus_one(cfg, n)?;
            let t_cases: Vec<TCase> = match (cfg.t_case, cfg.l_case) {
                (Some(t), _) => vec![t],
                (None, Some(l)) => vec![TCase::ALL
                    .into_iter()
                    .find(|&t| params_from_tq(t, n) == l)
                    .ok_or_else(|| {
                        SuiteError::Config(format!("{l} is not one of the classified loci"))
                    })?],
                (None, None) if cfg.suite == Suite::Classify => {
                    return Err(SuiteError::Config(
                        "classify needs --t-case or --l-case".into(),
                    ))
                }
                (None, None) if minus_one => vec![TCase::NegOne],
                (None, None) => TCase::ALL.to_vec(),
            };
            t_cases
                .into_iter()
                .map(|t| run_main_theorem(n, t, minus_one))
                .collect()
        }
        Suite::Genericity => {
            let checks = genericity_probe(n, cfg.trials, cfg.seed)?;
            let report = CaseReport {
                n,
                field: "rational".into(),
                case: format!("random l off the locus, {} trials", cfg.trials),
                l: None,
                k_n: None,
                subspaces: Vec::new(),
            };
            Ok(vec![CaseOutcome {
                report,
                checks: prefixed(n, "genericity", checks),
            }])
        }
        Suite::ProofTraces => {
            if n != 8 {
                return Err(SuiteError::Config(format!(
                    "proof traces live at n = 8, got {n}"
                )));
            }
            let mut out = Vec::new();
            for (tag, case) in PROOF_TRACE_CASES.iter().zip([LCase::EqR, LCase::EqNegR3]) {
                if cfg.l_case.is_some_and(|l| l != case) {
                    continue;
                }
                let rep8 = RepSet::new(ParamSpec::ratfunc(8, case)?)?;
                let rep7 = RepSet::new(ParamSpec::ratfunc(7, case)?)?;
                let k8 = compute_kn(&rep8)?;
                let k7 = compute_kn(&rep7)?;
                let checks = proof_trace_check(tag, &rep8, &k8, &k7)?;
                let report = CaseReport {
                    n,
                    field: "ratfunc".into(),
                    case: tag.to_string(),
                    l: Some(rep8.params().l().to_string()),
                    k_n: Some(k8.k_n),
                    subspaces: Vec::new(),
                };
                out.push(CaseOutcome {
                    report,
                    checks: prefixed(n, tag, checks),
                });
            }
            Ok(out)
        }
    }
}

/// Runs the configured suite. An empty n-range yields an empty, passing report.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    cfg.validate()?;
    let ns: Vec<usize> = (cfg.n_min..=cfg.n_max).collect();
    // Results are collected in n order, so the report does not depend on scheduling.
    let per_n: Vec<Vec<CaseOutcome>> = ns
        .par_iter()
        .map(|&n| run_one_n(cfg, n))
        .collect::<Result<_, _>>()?;
    let mut cases = Vec::new();
    let mut checks = Vec::new();
    for outcome in per_n.into_iter().flatten() {
        cases.push(outcome.report);
        checks.extend(outcome.checks);
    }
    Ok(SuiteReport::new(
        cfg.suite.to_string(),
        cfg.field.to_string(),
        cfg.seed,
        cases,
        checks,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_names_and_fields() {
        assert_eq!("main-theorem".parse::<Suite>().unwrap(), Suite::MainTheorem);
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!(
            "cyclotomic:20".parse::<FieldChoice>().unwrap(),
            FieldChoice::Cyclotomic(20)
        );
        assert_eq!(
            "cyclotomic:4n".parse::<FieldChoice>().unwrap(),
            FieldChoice::CyclotomicFourN
        );
        assert_eq!(
            "rational:3/2".parse::<FieldChoice>().unwrap(),
            FieldChoice::Rational(Rational::new(3, 2).unwrap())
        );
        assert!("cyclotomic:2".parse::<FieldChoice>().is_err());
        assert!("reals".parse::<FieldChoice>().is_err());
    }

    #[test]
    fn desk_scale_guard() {
        let cfg = SuiteConfig::new(Suite::Kernels, 9, 9);
        assert!(matches!(run_suite(&cfg), Err(SuiteError::Config(_))));
        let mut small = SuiteConfig::new(Suite::Kernels, 2, 2);
        small.l_case = Some(LCase::EqR);
        assert!(run_suite(&small).is_err());
    }

    #[test]
    fn empty_range_is_an_empty_pass() {
        let report = run_suite(&SuiteConfig::new(Suite::Kernels, 5, 4)).unwrap();
        assert!(report.cases.is_empty() && report.checks.is_empty());
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn kernel_suite_reports_k4() {
        let mut cfg = SuiteConfig::new(Suite::Kernels, 4, 4);
        cfg.l_case = Some(LCase::EqR);
        let report = run_suite(&cfg).unwrap();
        assert!(report.pass);
        assert_eq!(report.cases[0].k_n, Some(2));
        assert!(report.to_json().contains("\"k_n\": 2"));
    }

    #[test]
    fn reports_are_reproducible() {
        let mut cfg = SuiteConfig::new(Suite::Genericity, 3, 4);
        cfg.seed = 42;
        cfg.trials = 2;
        assert_eq!(
            run_suite(&cfg).unwrap().to_json(),
            run_suite(&cfg).unwrap().to_json()
        );
    }

    #[test]
    fn classify_field_must_fit() {
        let mut cfg = SuiteConfig::new(Suite::Classify, 4, 4);
        cfg.t_case = Some(TCase::NegOne);
        cfg.field = FieldChoice::Cyclotomic(20);
        assert!(matches!(run_suite(&cfg), Err(SuiteError::Config(_))));
        cfg.field = FieldChoice::CyclotomicFourN;
        let report = run_suite(&cfg).unwrap();
        assert!(report.pass, "{}", report.to_text());
        let dims: Vec<usize> = report.cases[0].subspaces.iter().map(|s| s.dim).collect();
        assert_eq!(dims, vec![1, 3, 4]);
    }
}
