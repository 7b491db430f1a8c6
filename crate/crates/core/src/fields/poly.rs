use std::fmt;

use super::{Field, FieldError, Rational};

/// Dense univariate polynomial over Q, lowest degree first.
///
/// The zero polynomial is the empty coefficient list; otherwise the leading
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    pub fn x() -> Self {
        Polynomial::monomial(Rational::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total bit length of the coefficients.
    pub fn bits(&self) -> u64 {
        self.coeffs.iter().map(Rational::bits).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Index of the lowest nonzero coefficient (the x-adic valuation).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// A single nonzero term `c * x^k`.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(Field::neg).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Divide by `x^k`; the caller guarantees `x^k` divides `self`.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(Field::is_zero));
        Polynomial::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Polynomial::zero(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), FieldError> {
        let dl = divisor.leading().ok_or(FieldError::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let lead_inv = dl.inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd];
            if c.is_zero() {
                continue;
            }
            let factor = if lead_inv.is_one() {
                c.clone()
            } else {
                c.mul(&lead_inv)
            };
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] = rem[k + j].sub(&factor.mul(d));
                }
            }
            quot[k] = factor;
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Polynomial::one();
        }
        if self.is_monomial() || other.is_monomial() {
            let k = self.valuation().unwrap().min(other.valuation().unwrap());
            return Polynomial::monomial(Rational::one(), k);
        }
        // Pull out the common power of x first; it is cheap and frequent here.
        let k = self.valuation().unwrap().min(other.valuation().unwrap());
        let mut a = self.shift_down(k).monic();
        let mut b = other.shift_down(k).monic();
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.is_constant() {
                return Polynomial::monomial(Rational::one(), k);
            }
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.shift_up(k)
    }

    /// Returns `(g, s)` with `s * self ≡ g (mod modulus)` and `g = gcd(self, modulus)` monic.
    pub fn inverse_mod(&self, modulus: &Self) -> (Self, Self) {
        let (mut r0, mut r1) = (modulus.clone(), self.div_rem(modulus).expect("nonzero").1);
        let (mut s0, mut s1) = (Polynomial::zero(), Polynomial::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = s0 * self (mod modulus); normalize to monic.
        let lc = r0.leading().cloned().unwrap_or_else(Rational::one);
        let inv = lc.inv().expect("nonzero leading coefficient");
        (
            r0.scale(&inv),
            s0.scale(&inv).div_rem(modulus).expect("nonzero").1,
        )
    }

    /// Horner evaluation at a point of any exact field.
    pub fn eval<F: Field>(&self, at: &F) -> F {
        let mut acc = at.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(&at.from_rational_like(c));
        }
        acc
    }

    pub fn fmt_with_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = match k {
                0 => format!("({c})"),
                _ => {
                    let power = if k == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{k}")
                    };
                    if c.is_one() {
                        power
                    } else {
                        format!("({c})*{power}")
                    }
                }
            };
            terms.push(term);
        }
        terms.join(" + ")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with_var("x"))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]", self.fmt_with_var("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn division_with_remainder() {
        // x^3 - 1 = (x - 1)(x^2 + x + 1)
        let (q, r) = p(&[-1, 0, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[0, 2])).unwrap();
        assert_eq!(
            q,
            Polynomial::new(vec![Rational::zero(), Rational::new(1, 2).unwrap()])
        );
        assert_eq!(r, p(&[1]));
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        // (x-1)(x+2) and (x-1)(x^2+1)
        let a = p(&[-1, 1]).mul(&p(&[2, 1]));
        let b = p(&[-1, 1])
            .mul(&p(&[1, 0, 1]))
            .scale(&Rational::from_int(3));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[0, 0, 5]).gcd(&p(&[0, 1, 1])), p(&[0, 1]));
        assert_eq!(p(&[0, 0, 1, 1]).gcd(&p(&[0, 0, 0, 1, 1])), p(&[0, 0, 1, 1]));
    }

    #[test]
    fn modular_inverse() {
        let modulus = p(&[1, 0, 1]);
        let (g, s) = p(&[1, 1]).inverse_mod(&modulus);
        assert!(g.is_one());
        let prod = s.mul(&p(&[1, 1])).div_rem(&modulus).unwrap().1;
        assert!(prod.is_one());
    }

    #[test]
    fn evaluation() {
        assert_eq!(
            p(&[1, 0, 1]).eval(&Rational::from_int(2)),
            Rational::from_int(5)
        );
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, -1]).fmt_with_var("r"), "(-1)*r^2 + (1)");
        assert_eq!(p(&[0, 1]).fmt_with_var("r"), "r");
    }
}
