use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::LkError;
use crate::fields::{CyclotomicElement, Field, FieldDescriptor, RatFunc, Rational};

/// `coeff · r^power`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct LaurentMonomial {
    pub coeff: i64,
    pub power: i64,
}

impl LaurentMonomial {
    pub fn new(coeff: i64, power: i64) -> Self {
        LaurentMonomial { coeff, power }
    }

    pub fn eval<F: Field>(&self, r: &F) -> Result<F, LkError> {
        Ok(r.pow(self.power)?.mul(&r.from_int_like(self.coeff)))
    }
}

impl fmt::Display for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*r^{}", self.coeff, self.power)
    }
}

/// Parses `r`, `-r^3`, `r5`, `r^-7`, `2*r^3`, `-1/r`, `1/r^7`, `-1`, ...
impl FromStr for LaurentMonomial {
    type Err = LkError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let bad = || LkError::Parse(format!("not a Laurent monomial in r: {input:?}"));
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, s.strip_prefix('+').unwrap_or(&s)),
        };
        if let Some((num, den)) = body.split_once('/') {
            let coeff: i64 = num.parse().map_err(|_| bad())?;
            let den = LaurentMonomial::from_str(den)?;
            if den.coeff != 1 {
                return Err(bad());
            }
            return Ok(LaurentMonomial::new(sign * coeff, -den.power));
        }
        let Some(idx) = body.find('r') else {
            let coeff: i64 = body.parse().map_err(|_| bad())?;
            return Ok(LaurentMonomial::new(sign * coeff, 0));
        };
        let coeff_part = body[..idx].trim_end_matches('*');
        let coeff: i64 = if coeff_part.is_empty() {
            1
        } else {
            coeff_part.parse().map_err(|_| bad())?
        };
        let exp_part = &body[idx + 1..];
        let exp_part = exp_part.strip_prefix('^').unwrap_or(exp_part);
        let exp_part = exp_part.trim_start_matches('(').trim_end_matches(')');
        let power: i64 = if exp_part.is_empty() {
            1
        } else {
            exp_part.parse().map_err(|_| bad())?
        };
        Ok(LaurentMonomial::new(sign * coeff, power))
    }
}

/// The reducibility loci for l, each a Laurent monomial in r depending on n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LCase {
    /// l = r
    EqR,
    /// l = −r³
    EqNegR3,
    /// l = r^{3−2n}
    EqInvR2n3,
    /// l = r^{3−n}
    EqInvRn3,
    /// l = −r^{3−n}
    EqNegInvRn3,
    Explicit(LaurentMonomial),
}

impl LCase {
    pub const LOCUS: [LCase; 5] = [
        LCase::EqR,
        LCase::EqNegR3,
        LCase::EqInvR2n3,
        LCase::EqInvRn3,
        LCase::EqNegInvRn3,
    ];

    pub fn monomial(&self, n: usize) -> LaurentMonomial {
        let n = n as i64;
        match *self {
            LCase::EqR => LaurentMonomial::new(1, 1),
            LCase::EqNegR3 => LaurentMonomial::new(-1, 3),
            LCase::EqInvR2n3 => LaurentMonomial::new(1, 3 - 2 * n),
            LCase::EqInvRn3 => LaurentMonomial::new(1, 3 - n),
            LCase::EqNegInvRn3 => LaurentMonomial::new(-1, 3 - n),
            LCase::Explicit(m) => m,
        }
    }

    pub fn tag(&self) -> String {
        match self {
            LCase::EqR => "l_eq_r".into(),
            LCase::EqNegR3 => "l_eq_neg_r3".into(),
            LCase::EqInvR2n3 => "l_eq_inv_r2n3".into(),
            LCase::EqInvRn3 => "l_eq_inv_rn3".into(),
            LCase::EqNegInvRn3 => "l_eq_neg_inv_rn3".into(),
            LCase::Explicit(m) => format!("explicit:{m}"),
        }
    }
}

impl FromStr for LCase {
    type Err = LkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "l_eq_r" => LCase::EqR,
            "l_eq_neg_r3" => LCase::EqNegR3,
            "l_eq_inv_r2n3" => LCase::EqInvR2n3,
            "l_eq_inv_rn3" => LCase::EqInvRn3,
            "l_eq_neg_inv_rn3" => LCase::EqNegInvRn3,
            other => match other.strip_prefix("explicit:") {
                Some(expr) => LCase::Explicit(expr.parse()?),
                None => return Err(LkError::UnknownTag(other.to_string())),
            },
        })
    }
}

impl fmt::Display for LCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl Serialize for LCase {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The Krammer parameter t in terms of q, for the five reducible rows of the classification.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum TCase {
    /// t = 1/qⁿ
    InvQn,
    /// t = 1/√qⁿ
    InvSqrtQn,
    /// t = −1/√qⁿ
    NegInvSqrtQn,
    /// t = 1/q
    InvQ,
    /// t = −1
    NegOne,
}

impl TCase {
    pub const ALL: [TCase; 5] = [
        TCase::InvQn,
        TCase::InvSqrtQn,
        TCase::NegInvSqrtQn,
        TCase::InvQ,
        TCase::NegOne,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            TCase::InvQn => "t_eq_inv_qn",
            TCase::InvSqrtQn => "t_eq_inv_sqrt_qn",
            TCase::NegInvSqrtQn => "t_eq_neg_inv_sqrt_qn",
            TCase::InvQ => "t_eq_inv_q",
            TCase::NegOne => "t_eq_neg_one",
        }
    }
}

impl FromStr for TCase {
    type Err = LkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TCase::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| LkError::UnknownTag(s.to_string()))
    }
}

impl fmt::Display for TCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl Serialize for TCase {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Translates a t-row into an l-locus via l = r³/t with q = 1/r², √q = 1/r.
pub fn params_from_tq(t_case: TCase, _n: usize) -> LCase {
    match t_case {
        TCase::InvQn => LCase::EqInvR2n3,
        TCase::InvSqrtQn => LCase::EqInvRn3,
        TCase::NegInvSqrtQn => LCase::EqNegInvRn3,
        TCase::InvQ => LCase::EqR,
        TCase::NegOne => LCase::EqNegR3,
    }
}

/// Parameters (n, r, l, m = 1/r − r) of one specialization of the representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSpec<F: Field> {
    n: usize,
    field: FieldDescriptor,
    r: F,
    l: F,
    m: F,
}

impl<F: Field> ParamSpec<F> {
    /// Validates `l ≠ 0`, `r ≠ 0` and the semisimplicity guard `r^{2k} ≠ 1` for `1 ≤ k ≤ n`.
    pub fn new(n: usize, r: F, l: F) -> Result<Self, LkError> {
        if n < 3 {
            return Err(LkError::InvalidN { n, min: 3 });
        }
        if r.is_zero() || l.is_zero() {
            return Err(LkError::InvalidParams("r and l must be nonzero".into()));
        }
        let r2 = r.mul(&r);
        let mut power = r2.clone();
        for k in 1..=n {
            if power.is_one() {
                return Err(LkError::InvalidParams(format!(
                    "r^(2*{k}) = 1 violates semisimplicity"
                )));
            }
            power = power.mul(&r2);
        }
        let m = r.inv()?.sub(&r);
        Ok(ParamSpec {
            n,
            field: r.descriptor(),
            r,
            l,
            m,
        })
    }

    pub fn with_case(n: usize, r: F, case: LCase) -> Result<Self, LkError> {
        let l = case.monomial(n).eval(&r)?;
        ParamSpec::new(n, r, l)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn r(&self) -> &F {
        &self.r
    }

    pub fn l(&self) -> &F {
        &self.l
    }

    pub fn m(&self) -> &F {
        &self.m
    }

    /// `r^k` for any integer k.
    pub fn r_pow(&self, k: i64) -> F {
        self.r.pow(k).expect("r is nonzero")
    }

    /// Same r and l at another level n (used to compare V^(n−1) with V^(n)).
    pub fn at_level(&self, n: usize) -> Result<Self, LkError> {
        ParamSpec::new(n, self.r.clone(), self.l.clone())
    }

    /// Whether l coincides with the locus value of `case` at this n.
    pub fn l_matches(&self, case: LCase) -> bool {
        case.monomial(self.n)
            .eval(&self.r)
            .is_ok_and(|v| v == self.l)
    }
}

impl ParamSpec<RatFunc> {
    /// Generic r (the indeterminate of Q(r)) with l on the given locus.
    pub fn ratfunc(n: usize, case: LCase) -> Result<Self, LkError> {
        ParamSpec::with_case(n, RatFunc::indeterminate(), case)
    }
}

impl ParamSpec<CyclotomicElement> {
    /// r a primitive m-th root of unity.
    pub fn cyclotomic(n: usize, m: u64, case: LCase) -> Result<Self, LkError> {
        ParamSpec::with_case(n, CyclotomicElement::generator(m)?, case)
    }
}

impl ParamSpec<Rational> {
    pub fn rational(n: usize, r: Rational, l: Rational) -> Result<Self, LkError> {
        ParamSpec::new(n, r, l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_parsing() {
        let cases = [
            ("r", (1, 1)),
            ("-r^3", (-1, 3)),
            ("r5", (1, 5)),
            ("r^-7", (1, -7)),
            ("2*r^3", (2, 3)),
            ("-1/r", (-1, -1)),
            ("1/r^7", (1, -7)),
            ("-1", (-1, 0)),
            ("r^(-2)", (1, -2)),
        ];
        for (text, (c, p)) in cases {
            assert_eq!(
                text.parse::<LaurentMonomial>().unwrap(),
                LaurentMonomial::new(c, p),
                "{text}"
            );
        }
        assert!("q^2".parse::<LaurentMonomial>().is_err());
        assert!("1/(2r)".parse::<LaurentMonomial>().is_err());
    }

    #[test]
    fn t_to_l_dictionary() {
        let n = 5;
        assert_eq!(
            params_from_tq(TCase::InvQ, n).monomial(n),
            LaurentMonomial::new(1, 1)
        );
        assert_eq!(
            params_from_tq(TCase::NegOne, n).monomial(n),
            LaurentMonomial::new(-1, 3)
        );
        assert_eq!(
            params_from_tq(TCase::InvQn, n).monomial(n),
            LaurentMonomial::new(1, -7)
        );
        assert!("t_eq_bogus".parse::<TCase>().is_err());
        assert_eq!("t_eq_inv_q".parse::<TCase>().unwrap(), TCase::InvQ);
    }

    /// Oracle: evaluate t directly in Q(r) from q = 1/r² and compare r³/t with the locus.
    #[test]
    fn t_to_l_matches_direct_substitution() {
        let r = RatFunc::indeterminate();
        let q = r.pow(-2).unwrap();
        let sqrt_q = r.inv().unwrap();
        for n in 3..=9usize {
            let ni = n as i64;
            for t_case in TCase::ALL {
                let t = match t_case {
                    TCase::InvQn => q.pow(ni).unwrap().inv().unwrap(),
                    TCase::InvSqrtQn => sqrt_q.pow(ni).unwrap().inv().unwrap(),
                    TCase::NegInvSqrtQn => sqrt_q.pow(ni).unwrap().inv().unwrap().neg(),
                    TCase::InvQ => q.inv().unwrap(),
                    TCase::NegOne => r.from_int_like(-1),
                };
                let l_direct = r.pow(3).unwrap().div(&t).unwrap();
                let l_table = params_from_tq(t_case, n).monomial(n).eval(&r).unwrap();
                assert_eq!(l_direct, l_table, "n={n} {t_case}");
            }
        }
    }

    /// q is a k-th root of unity iff r^{2k} = 1, and qⁿ = −1 iff r^{2n} = −1, for r in Q[x]/Φ_{4n}.
    #[test]
    fn semisimplicity_translates() {
        for n in 3..=8usize {
            let r = CyclotomicElement::generator(4 * n as u64).unwrap();
            let q = r.pow(-2).unwrap();
            for k in 1..=n as i64 {
                assert_eq!(q.pow(k).unwrap().is_one(), r.pow(2 * k).unwrap().is_one());
                assert!(!q.pow(k).unwrap().is_one());
            }
            let minus_one = r.from_int_like(-1);
            assert_eq!(q.pow(n as i64).unwrap(), minus_one);
            assert_eq!(r.pow(2 * n as i64).unwrap(), minus_one);
        }
    }

    #[test]
    fn param_guards() {
        assert!(ParamSpec::rational(4, Rational::from_int(1), Rational::from_int(2)).is_err());
        assert!(ParamSpec::rational(4, Rational::from_int(-1), Rational::from_int(2)).is_err());
        assert!(ParamSpec::rational(4, Rational::from_int(2), Rational::from_int(0)).is_err());
        assert!(ParamSpec::rational(2, Rational::from_int(2), Rational::from_int(3)).is_err());
        // r = primitive 8th root: r^4 = -1, r^8 = 1 so n = 4 is excluded.
        assert!(ParamSpec::cyclotomic(4, 8, LCase::EqR).is_err());
        assert!(ParamSpec::cyclotomic(4, 16, LCase::EqR).is_ok());
        let p = ParamSpec::ratfunc(5, LCase::EqInvR2n3).unwrap();
        assert_eq!(*p.l(), RatFunc::indeterminate().pow(-7).unwrap());
        assert_eq!(p.m().mul(p.r()), RatFunc::one().sub(&p.r().mul(p.r())));
        assert!(p.l_matches(LCase::EqInvR2n3));
        assert!(!p.l_matches(LCase::EqR));
    }

    #[test]
    fn lcase_tags_round_trip() {
        for case in LCase::LOCUS {
            assert_eq!(case.tag().parse::<LCase>().unwrap(), case);
        }
        assert_eq!(
            "explicit:r5".parse::<LCase>().unwrap(),
            LCase::Explicit(LaurentMonomial::new(1, 5))
        );
        assert!("l_eq_q".parse::<LCase>().is_err());
    }
}
