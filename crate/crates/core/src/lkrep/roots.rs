use std::fmt;

use serde::{Serialize, Serializer};

use super::LkError;

/// Positive root α_s + … + α_{t−1} of A_{n−1}, naming the basis vector w_{s,t}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RootIndex {
    s: usize,
    t: usize,
}

impl RootIndex {
    pub fn new(s: usize, t: usize) -> Result<Self, LkError> {
        if s == 0 || s >= t {
            return Err(LkError::InvalidRoot { s, t });
        }
        Ok(RootIndex { s, t })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn height(&self) -> usize {
        self.t - self.s
    }

    /// Whether α_k appears in the root, i.e. `s ≤ k ≤ t − 1`.
    pub fn supports(&self, k: usize) -> bool {
        self.s <= k && k < self.t
    }

    pub fn is_valid_for(&self, n: usize) -> bool {
        self.t <= n
    }

    /// Position in the lexicographic basis of V^(n).
    pub fn position(&self, n: usize) -> usize {
        debug_assert!(self.is_valid_for(n));
        // Roots (s', ·) with s' < s come first: n − s' of them each.
        let before: usize = (1..self.s).map(|s| n - s).sum();
        before + (self.t - self.s - 1)
    }
}

impl fmt::Display for RootIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{},{}", self.s, self.t)
    }
}

impl Serialize for RootIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// All positive roots of A_{n−1} in lexicographic (s, t) order: the basis order of V^(n).
pub fn positive_roots(n: usize) -> Result<Vec<RootIndex>, LkError> {
    if n < 2 {
        return Err(LkError::InvalidN { n, min: 2 });
    }
    Ok((1..n)
        .flat_map(|s| (s + 1..=n).map(move |t| RootIndex { s, t }))
        .collect())
}

pub fn lk_dimension(n: usize) -> usize {
    n * (n - 1) / 2
}
