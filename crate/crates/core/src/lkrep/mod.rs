//! The representation ν⁽ⁿ⁾ of the BMW algebra on the Lawrence–Krammer space V⁽ⁿ⁾.
//!
//! V⁽ⁿ⁾ has one basis vector w_{s,t} per positive root α_s + … + α_{t−1} of
//! A_{n−1}, ordered lexicographically in (s, t). The generators g_i act by the
//! matrices ν_i built in [`nu_matrix`]; e_i acts by (l/m)(ν_i² + m ν_i − id);
//! the conjugates C_ij = g_{j−1}⁻¹⋯g_{i+1}⁻¹ e_i g_{i+1}⋯g_{j−1} cut out K(n).

mod params;
mod rep;
mod roots;

use thiserror::Error;

use crate::fields::FieldError;
use crate::linalg::LinalgError;

pub use params::{params_from_tq, LCase, LaurentMonomial, ParamSpec, TCase};
pub use rep::{
    c_matrix, c_matrix_reversed, e_matrix, nu_case, nu_matrix, relation_suite, NuCase, RepSet,
};
pub use roots::{lk_dimension, positive_roots, RootIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LkError {
    #[error("n = {n} is too small (need n >= {min})")]
    InvalidN { n: usize, min: usize },
    #[error("invalid positive root ({s}, {t})")]
    InvalidRoot { s: usize, t: usize },
    #[error("generator index {i} out of range for n = {n}")]
    GeneratorOutOfRange { i: usize, n: usize },
    #[error("invalid pair C({i},{j}) for n = {n}")]
    InvalidPair { i: usize, j: usize, n: usize },
    #[error("nu_{i} on {root}: {matches} defining cases apply (expected exactly one)")]
    CaseConflict {
        i: usize,
        root: String,
        matches: usize,
    },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown tag {0:?}")]
    UnknownTag(String),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
