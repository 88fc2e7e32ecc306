use alloc::format;
use core::fmt;

use crate::Error;

/// Upper bound on the number of white neighbors a forcing vertex may have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Limit {
    Finite(usize),
    Infinite,
}

impl Limit {
    /// Whether a blue vertex with `white` white neighbors may force.
    #[inline]
    pub fn admits(self, white: usize) -> bool {
        match self {
            Limit::Finite(q) => white <= q,
            Limit::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Limit::Finite(q) => Some(q),
            Limit::Infinite => None,
        }
    }

    /// The next larger limit; `∞ + 1 = ∞`.
    pub fn succ(self) -> Limit {
        match self {
            Limit::Finite(q) => Limit::Finite(q + 1),
            Limit::Infinite => Limit::Infinite,
        }
    }

    /// `self >= k` for a finite `k`.
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Limit::Finite(q) => q >= k,
            Limit::Infinite => true,
        }
    }
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Finite(q) => write!(f, "{q}"),
            Limit::Infinite => f.write_str("inf"),
        }
    }
}

/// The pair `(p, q)`: `p ≥ 1` blue neighbors are required, and the forcer may
/// have at most `q ≥ 1` white neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpreadParams {
    p: usize,
    q: Limit,
}

impl SpreadParams {
    pub fn new(p: usize, q: Limit) -> Result<Self, Error> {
        if p == 0 {
            return Err(Error::InvalidParameter(format!("p must be at least 1, got {p}")));
        }
        if q == Limit::Finite(0) {
            return Err(Error::InvalidParameter("q must be at least 1".into()));
        }
        Ok(SpreadParams { p, q })
    }

    /// Shorthand for finite `q`. Panics on invalid values.
    pub fn finite(p: usize, q: usize) -> Self {
        Self::new(p, Limit::Finite(q)).expect("valid (p, q)")
    }

    /// Shorthand for `q = ∞`. Panics if `p == 0`.
    pub fn unbounded(p: usize) -> Self {
        Self::new(p, Limit::Infinite).expect("valid p")
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> Limit {
        self.q
    }

    pub fn with_q(&self, q: Limit) -> Result<Self, Error> {
        Self::new(self.p, q)
    }
}

impl fmt::Display for SpreadParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}
