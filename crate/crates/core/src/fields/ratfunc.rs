use std::fmt;

use super::{Field, FieldDescriptor, FieldElement, FieldError, Polynomial, Rational};

/// Element of Q(r): a reduced fraction of polynomials with monic denominator.
///
/// Two elements are equal iff their stored numerators and denominators are
/// identical, since the representation is canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Polynomial,
    den: Polynomial,
}

fn divide_out(p: &Polynomial, g: &Polynomial) -> Polynomial {
    if g.is_one() {
        p.clone()
    } else {
        p.exact_div(g)
    }
}

impl RatFunc {
    /// Builds `num / den` in canonical form.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let g = num.gcd(&den);
        Ok(RatFunc::normalized(
            divide_out(&num, &g),
            divide_out(&den, &g),
        ))
    }

    /// `num / den` already coprime; only rescales so the denominator is monic.
    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv().expect("nonzero");
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Polynomial::one())
    }

    /// The indeterminate `r`.
    pub fn indeterminate() -> Self {
        RatFunc::from_poly(Polynomial::x())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RatFunc {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        RatFunc::from_poly(Polynomial::constant(q))
    }

    /// `coeff * r^power` for any integer power.
    pub fn laurent_monomial(coeff: Rational, power: i64) -> Self {
        if coeff.is_zero() {
            return RatFunc::zero();
        }
        let k = power.unsigned_abs() as usize;
        if power >= 0 {
            RatFunc::from_poly(Polynomial::monomial(coeff, k))
        } else {
            RatFunc {
                num: Polynomial::constant(coeff),
                den: Polynomial::monomial(Rational::one(), k),
            }
        }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    /// Returns `(c, k)` when the element is `c * r^k`.
    pub fn as_laurent_monomial(&self) -> Option<(Rational, i64)> {
        if !self.num.is_monomial() || !self.den.is_monomial() {
            return None;
        }
        let a = self.num.valuation()? as i64;
        let b = self.den.valuation()? as i64;
        Some((self.num.leading()?.clone(), a - b))
    }
}

impl Field for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero()
    }

    fn one_like(&self) -> Self {
        RatFunc::one()
    }

    fn from_rational_like(&self, q: &Rational) -> Self {
        RatFunc::from_rational(q.clone())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            if self.den.is_one() {
                return RatFunc::from_poly(num);
            }
            let g = num.gcd(&self.den);
            return RatFunc::normalized(divide_out(&num, &g), divide_out(&self.den, &g));
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            // Coprime denominators: the cross sum is already reduced.
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            return RatFunc::normalized(num, self.den.mul(&rhs.den));
        }
        let b = self.den.exact_div(&g);
        let d = rhs.den.exact_div(&g);
        let num = self.num.mul(&d).add(&rhs.num.mul(&b));
        let h = num.gcd(&g);
        let den = b.mul(&d).mul(&divide_out(&g, &h));
        RatFunc::normalized(divide_out(&num, &h), den)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = divide_out(&self.num, &g1).mul(&divide_out(&rhs.num, &g2));
        let den = divide_out(&self.den, &g2).mul(&divide_out(&rhs.den, &g1));
        RatFunc::normalized(num, den)
    }

    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(RatFunc::normalized(self.den.clone(), self.num.clone()))
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::ratfunc()
    }

    fn size_hint(&self) -> u64 {
        let degrees = self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0);
        ((degrees as u64) << 32) + self.num.bits() + self.den.bits()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((c, k)) = self.as_laurent_monomial() {
            return match k {
                0 => write!(f, "({c})"),
                1 => write!(f, "({c})*r"),
                _ => write!(f, "({c})*r^{k}"),
            };
        }
        if self.den.is_one() {
            f.write_str(&self.num.fmt_with_var("r"))
        } else {
            write!(
                f,
                "({})/({})",
                self.num.fmt_with_var("r"),
                self.den.fmt_with_var("r")
            )
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Evaluates `e` at `r = r_value` inside the field of `r_value`.
pub fn specialize_in<F: Field>(e: &RatFunc, r_value: &F) -> Result<F, FieldError> {
    let den = e.den.eval(r_value);
    if den.is_zero() {
        return Err(FieldError::VanishingDenominator {
            factor: e.den.fmt_with_var("r"),
        });
    }
    e.num.eval(r_value).div(&den)
}

/// Image of `e` under `r ↦ r_value`, where `r_value` lies in `target`.
///
/// On failure the error names the factor of the denominator that vanishes:
/// `r - a` for a rational point `a`, `gcd(den, Φ_m)` for a cyclotomic point.
pub fn specialize(
    e: &RatFunc,
    target: FieldDescriptor,
    r_value: &FieldElement,
) -> Result<FieldElement, FieldError> {
    if r_value.descriptor() != target {
        return Err(FieldError::MixedFields(target, r_value.descriptor()));
    }
    match r_value {
        FieldElement::Rational(a) => {
            let linear = Polynomial::new(vec![a.neg(), Rational::one()]);
            if e.den.eval(a).is_zero() {
                return Err(FieldError::VanishingDenominator {
                    factor: linear.fmt_with_var("r"),
                });
            }
            specialize_in(e, a).map(FieldElement::Rational)
        }
        FieldElement::Cyclotomic(z) => {
            let img = e.den.eval(z);
            if img.is_zero() {
                let factor = if z.is_generator() {
                    e.den.gcd(z.modulus_polynomial())
                } else {
                    e.den.clone()
                };
                return Err(FieldError::VanishingDenominator {
                    factor: factor.fmt_with_var("r"),
                });
            }
            specialize_in(e, z).map(FieldElement::Cyclotomic)
        }
        FieldElement::RatFunc(s) => specialize_in(e, s).map(FieldElement::RatFunc),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::CyclotomicElement;
    use proptest::prelude::*;

    fn r() -> RatFunc {
        RatFunc::indeterminate()
    }

    fn poly(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(Polynomial::from_ints(c))
    }

    #[test]
    fn m_times_r() {
        let m = r().inv().unwrap().sub(&r());
        assert_eq!(m.mul(&r()), poly(&[1, 0, -1]));
    }

    #[test]
    fn canonical_form_cancels() {
        // (r^2 - 1) / (2r - 2) = (r + 1) / 2
        let a = RatFunc::new(
            Polynomial::from_ints(&[-1, 0, 1]),
            Polynomial::from_ints(&[-2, 2]),
        )
        .unwrap();
        let half = Rational::new(1, 2).unwrap();
        assert_eq!(
            a,
            RatFunc::from_poly(Polynomial::from_ints(&[1, 1]).scale(&half))
        );
        assert!(a.denom().is_one());
    }

    #[test]
    fn laurent_monomials() {
        let a = RatFunc::laurent_monomial(Rational::from_int(-1), 3);
        assert_eq!(a, r().pow(3).unwrap().neg());
        assert_eq!(a.to_string(), "(-1)*r^3");
        let b = RatFunc::laurent_monomial(Rational::one(), -7);
        assert_eq!(b.as_laurent_monomial(), Some((Rational::one(), -7)));
        assert_eq!(b.to_string(), "(1)*r^-7");
    }

    #[test]
    fn specialize_rational_point() {
        let e = poly(&[1, 0, 1]);
        let out = specialize(
            &e,
            FieldDescriptor::rational(),
            &FieldElement::Rational(Rational::from_int(2)),
        );
        assert_eq!(out.unwrap(), FieldElement::Rational(Rational::from_int(5)));
    }

    #[test]
    fn specialize_inverse_at_gaussian_unit() {
        let x = CyclotomicElement::generator(4).unwrap();
        let target = x.descriptor();
        let out = specialize(
            &r().inv().unwrap(),
            target,
            &FieldElement::Cyclotomic(x.clone()),
        )
        .unwrap();
        assert_eq!(out, FieldElement::Cyclotomic(x.neg()));
    }

    #[test]
    fn specialize_r6_at_twelfth_root() {
        let x = CyclotomicElement::generator(12).unwrap();
        let e = r().pow(6).unwrap();
        let out = specialize(&e, x.descriptor(), &FieldElement::Cyclotomic(x.clone())).unwrap();
        assert_eq!(out, FieldElement::Cyclotomic(x.from_int_like(-1)));
    }

    #[test]
    fn specialize_reports_vanishing_factor() {
        // 1 / (r^2 - 4) at r = 2: factor r - 2
        let e = RatFunc::new(Polynomial::one(), Polynomial::from_ints(&[-4, 0, 1])).unwrap();
        let err = specialize(
            &e,
            FieldDescriptor::rational(),
            &FieldElement::Rational(Rational::from_int(2)),
        )
        .unwrap_err();
        assert_eq!(
            err,
            FieldError::VanishingDenominator {
                factor: "r + (-2)".into()
            }
        );
        // 1 / ((r^2 + 1)(r - 3)) at a primitive 4th root: factor r^2 + 1
        let den = Polynomial::from_ints(&[1, 0, 1]).mul(&Polynomial::from_ints(&[-3, 1]));
        let e = RatFunc::new(Polynomial::one(), den).unwrap();
        let x = CyclotomicElement::generator(4).unwrap();
        let err = specialize(&e, x.descriptor(), &FieldElement::Cyclotomic(x)).unwrap_err();
        assert_eq!(
            err,
            FieldError::VanishingDenominator {
                factor: "r^2 + (1)".into()
            }
        );
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(-4i64..=4, 0..4).prop_map(|c| Polynomial::from_ints(&c))
    }

    fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
        (arb_poly(), arb_poly())
            .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_ratfunc(), b in arb_ratfunc(), c in arb_ratfunc()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert!(a.sub(&a).is_zero());
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn equality_iff_cross_products_agree(a in arb_ratfunc(), b in arb_ratfunc()) {
            let cross = a.numer().mul(b.denom()) == b.numer().mul(a.denom());
            prop_assert_eq!(a == b, cross);
            prop_assert!(a.denom().is_monic());
            prop_assert!(a.numer().gcd(a.denom()).is_one());
        }
    }
}
