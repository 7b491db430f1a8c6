use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::{Field, FieldDescriptor, FieldError, Polynomial, Rational};

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

fn phi_cache() -> &'static Mutex<HashMap<u64, Polynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Polynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The m-th cyclotomic polynomial Φ_m, computed as (x^m − 1) / ∏_{d|m, d<m} Φ_d.
///
/// # Panics
/// If `m == 0`.
pub fn cyclotomic_polynomial(m: u64) -> Polynomial {
    assert!(m >= 1, "cyclotomic polynomial index must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut quotient = Polynomial::monomial(Rational::one(), m as usize).sub(&Polynomial::one());
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        quotient = quotient.exact_div(&cyclotomic_polynomial(d));
    }
    phi_cache().lock().unwrap().insert(m, quotient.clone());
    quotient
}

#[derive(Debug)]
struct CyclotomicContext {
    m: u64,
    modulus: Polynomial,
}

fn context(m: u64) -> Arc<CyclotomicContext> {
    static CONTEXTS: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicContext>>>> = OnceLock::new();
    let map = CONTEXTS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(ctx) = map.lock().unwrap().get(&m) {
        return ctx.clone();
    }
    let ctx = Arc::new(CyclotomicContext {
        m,
        modulus: cyclotomic_polynomial(m),
    });
    map.lock().unwrap().entry(m).or_insert(ctx).clone()
}

/// Residue class in Q\[x\]/Φ_m(x), stored as exactly φ(m) rational coefficients.
#[derive(Clone)]
pub struct CyclotomicElement {
    ctx: Arc<CyclotomicContext>,
    coeffs: Vec<Rational>,
}

impl CyclotomicElement {
    /// Reduces an arbitrary polynomial modulo Φ_m.
    pub fn from_polynomial(m: u64, p: &Polynomial) -> Result<Self, FieldError> {
        FieldDescriptor::cyclotomic(m)?;
        Ok(Self::reduce(context(m), p))
    }

    /// The class of x, a primitive m-th root of unity.
    pub fn generator(m: u64) -> Result<Self, FieldError> {
        Self::from_polynomial(m, &Polynomial::x())
    }

    fn reduce(ctx: Arc<CyclotomicContext>, p: &Polynomial) -> Self {
        let rem = if p.degree() < ctx.modulus.degree() {
            p.clone()
        } else {
            p.div_rem(&ctx.modulus).expect("nonzero modulus").1
        };
        let phi = ctx.modulus.degree().unwrap();
        let mut coeffs = rem.coeffs().to_vec();
        coeffs.resize(phi, Rational::zero());
        CyclotomicElement { ctx, coeffs }
    }

    fn lift(&self) -> Polynomial {
        Polynomial::new(self.coeffs.clone())
    }

    pub fn modulus_index(&self) -> u64 {
        self.ctx.m
    }

    pub fn modulus_polynomial(&self) -> &Polynomial {
        &self.ctx.modulus
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_generator(&self) -> bool {
        self.lift() == Polynomial::x().div_rem(&self.ctx.modulus).unwrap().1
    }

    fn same_field(&self, rhs: &Self) {
        assert_eq!(
            self.ctx.m, rhs.ctx.m,
            "cyclotomic operands from different fields (use field_arithmetic for a checked operation)"
        );
    }
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.m == other.ctx.m && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicElement {}

impl Field for CyclotomicElement {
    fn zero_like(&self) -> Self {
        CyclotomicElement {
            ctx: self.ctx.clone(),
            coeffs: vec![Rational::zero(); self.coeffs.len()],
        }
    }

    fn one_like(&self) -> Self {
        self.from_rational_like(&Rational::one())
    }

    fn from_rational_like(&self, q: &Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); self.coeffs.len()];
        coeffs[0] = q.clone();
        CyclotomicElement {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.same_field(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        CyclotomicElement {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.same_field(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.sub(b))
            .collect();
        CyclotomicElement {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return self.zero_like();
        }
        Self::reduce(self.ctx.clone(), &self.lift().mul(&rhs.lift()))
    }

    fn neg(&self) -> Self {
        CyclotomicElement {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(Field::neg).collect(),
        }
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (g, s) = self.lift().inverse_mod(&self.ctx.modulus);
        // Φ_m is irreducible over Q, so every nonzero class is a unit.
        debug_assert!(g.is_one());
        Ok(Self::reduce(self.ctx.clone(), &s))
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::cyclotomic(self.ctx.m).expect("validated at construction")
    }

    fn size_hint(&self) -> u64 {
        self.coeffs.iter().map(Rational::bits).sum()
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} mod Phi_{}",
            self.lift().fmt_with_var("r"),
            self.ctx.m
        )
    }
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
