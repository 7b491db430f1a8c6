//! Exact scalar fields.
//!
//! Three coefficient domains are provided: the rationals [`Rational`], the
//! rational function field Q(r) in one indeterminate [`RatFunc`], and the
//! cyclotomic number fields Q\[x\]/Φ_m(x) [`CyclotomicElement`]. All of them
//! implement [`Field`], which is what the linear algebra and the
//! representation code are generic over.
//!
//! Field elements are self-describing: an element knows which field it lives
//! in, so "the zero of this field" is obtained from any element via
//! [`Field::zero_like`]. This is what lets a cyclotomic element carry its
//! modulus without a separate context object.

mod cyclotomic;
mod poly;
mod ratfunc;
mod rational;

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CyclotomicElement};
pub use poly::Polynomial;
pub use ratfunc::{specialize, RatFunc};
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields: {0} and {1}")]
    MixedFields(FieldDescriptor, FieldDescriptor),
    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("denominator vanishes at the specialization point (offending factor {factor})")]
    VanishingDenominator { factor: String },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Arithmetic shared by every exact scalar domain.
///
/// Operations between elements of two *different* fields (e.g. two
/// cyclotomic fields of different conductor) are a logic error and panic;
/// use [`field_arithmetic`] on [`FieldElement`] for a checked variant.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, q: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, FieldError>;
    fn descriptor(&self) -> FieldDescriptor;

    /// Rough storage size, used to prefer cheap pivots during elimination.
    fn size_hint(&self) -> u64 {
        0
    }

    fn from_int_like(&self, n: i64) -> Self {
        self.from_rational_like(&Rational::from_int(n))
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Integer power; negative exponents invert first.
    fn pow(&self, exp: i64) -> Result<Self, FieldError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = self.one_like();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rational,
    RatFunc,
    Cyclotomic,
}

/// Names a scalar domain. Cyclotomic fields carry their conductor `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldDescriptor {
    kind: FieldKind,
    modulus_index: Option<u64>,
}

impl FieldDescriptor {
    pub fn rational() -> Self {
        FieldDescriptor {
            kind: FieldKind::Rational,
            modulus_index: None,
        }
    }

    pub fn ratfunc() -> Self {
        FieldDescriptor {
            kind: FieldKind::RatFunc,
            modulus_index: None,
        }
    }

    pub fn cyclotomic(m: u64) -> Result<Self, FieldError> {
        if m < 3 {
            return Err(FieldError::InvalidDescriptor(format!(
                "cyclotomic field needs m >= 3, got {m}"
            )));
        }
        Ok(FieldDescriptor {
            kind: FieldKind::Cyclotomic,
            modulus_index: Some(m),
        })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn modulus_index(&self) -> Option<u64> {
        self.modulus_index
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.modulus_index) {
            (FieldKind::Rational, _) => f.write_str("rational"),
            (FieldKind::RatFunc, _) => f.write_str("ratfunc"),
            (FieldKind::Cyclotomic, Some(m)) => write!(f, "cyclotomic:{m}"),
            (FieldKind::Cyclotomic, None) => f.write_str("cyclotomic:?"),
        }
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A scalar from any of the three domains, with checked mixed-field arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldElement {
    Rational(Rational),
    RatFunc(RatFunc),
    Cyclotomic(CyclotomicElement),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            FieldElement::Rational(a) => a.descriptor(),
            FieldElement::RatFunc(a) => a.descriptor(),
            FieldElement::Cyclotomic(a) => a.descriptor(),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(a) => a.fmt(f),
            FieldElement::RatFunc(a) => a.fmt(f),
            FieldElement::Cyclotomic(a) => a.fmt(f),
        }
    }
}

fn apply<F: Field>(a: &F, b: &F, op: FieldOp) -> Result<F, FieldError> {
    Ok(match op {
        FieldOp::Add => a.add(b),
        FieldOp::Sub => a.sub(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Div => a.div(b)?,
    })
}

/// Exact `a op b`. Operands from different fields are rejected.
pub fn field_arithmetic(
    a: &FieldElement,
    b: &FieldElement,
    op: FieldOp,
) -> Result<FieldElement, FieldError> {
    if a.descriptor() != b.descriptor() {
        return Err(FieldError::MixedFields(a.descriptor(), b.descriptor()));
    }
    match (a, b) {
        (FieldElement::Rational(x), FieldElement::Rational(y)) => {
            apply(x, y, op).map(FieldElement::Rational)
        }
        (FieldElement::RatFunc(x), FieldElement::RatFunc(y)) => {
            apply(x, y, op).map(FieldElement::RatFunc)
        }
        (FieldElement::Cyclotomic(x), FieldElement::Cyclotomic(y)) => {
            apply(x, y, op).map(FieldElement::Cyclotomic)
        }
        _ => unreachable!("descriptors already compared"),
    }
}
