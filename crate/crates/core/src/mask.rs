//! Word-sized adjacency for graphs of at most 64 vertices, used by the
//! exhaustive searches. Agrees with [`crate::engine::closure`] on final sets.

use alloc::vec::Vec;

use crate::{Graph, Limit, SpreadParams};

pub(crate) const MAX_ORDER: usize = 64;

#[derive(Debug, Clone)]
pub(crate) struct MaskGraph {
    adj: Vec<u64>,
    all: u64,
}

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

pub(crate) fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

impl MaskGraph {
    /// Panics if the graph has more than 64 vertices.
    pub(crate) fn new(graph: &Graph) -> Self {
        let n = graph.order();
        assert!(n <= MAX_ORDER, "mask graphs hold at most {MAX_ORDER} vertices");
        let adj = (0..n)
            .map(|v| graph.neighbors(v).iter().fold(0u64, |m, &w| m | bit(w)))
            .collect();
        let all = if n == 64 { u64::MAX } else { bit(n) - 1 };
        MaskGraph { adj, all }
    }

    pub(crate) fn all(&self) -> u64 {
        self.all
    }

    #[inline]
    pub(crate) fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Final blue set reachable from `blue`.
    pub(crate) fn closure(&self, params: SpreadParams, mut blue: u64) -> u64 {
        let p = params.p() as u32;
        loop {
            let white = self.all & !blue;
            if white == 0 {
                return blue;
            }
            let forcers = match params.q() {
                Limit::Infinite => blue,
                Limit::Finite(q) => iter_bits(blue)
                    .filter(|&u| (self.adj[u] & white).count_ones() as usize <= q)
                    .fold(0u64, |m, u| m | bit(u)),
            };
            if forcers == 0 {
                return blue;
            }
            let mut grown = blue;
            for w in iter_bits(white) {
                let nbrs = self.adj[w];
                if (nbrs & blue).count_ones() >= p && nbrs & forcers != 0 {
                    grown |= bit(w);
                }
            }
            if grown == blue {
                return blue;
            }
            blue = grown;
        }
    }

    #[inline]
    pub(crate) fn percolates(&self, params: SpreadParams, blue: u64) -> bool {
        self.closure(params, blue) == self.all
    }

    /// Some member of `set` has at most `q` neighbors outside it (or `set` is everything).
    #[inline]
    pub(crate) fn can_start(&self, params: SpreadParams, set: u64) -> bool {
        if set == self.all {
            return true;
        }
        match params.q() {
            Limit::Infinite => set != 0,
            Limit::Finite(q) => {
                iter_bits(set).any(|v| (self.adj[v] & !set).count_ones() as usize <= q)
            }
        }
    }
}

pub(crate) fn iter_index_bits(mut mask: u128) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// All `r`-subsets of `0..n` as bit masks in increasing numeric (colex) order.
pub(crate) struct Combinations {
    next: Option<u128>,
    limit: u128,
}

impl Combinations {
    pub(crate) fn new(n: usize, r: usize) -> Self {
        debug_assert!(r <= n && n <= 64);
        let first = if r == 0 { 0 } else { (1u128 << r) - 1 };
        Combinations { next: Some(first), limit: 1u128 << n }
    }
}

impl Iterator for Combinations {
    type Item = u128;

    fn next(&mut self) -> Option<u128> {
        let current = self.next?;
        self.next = if current == 0 {
            None
        } else {
            // Gosper's hack
            let low = current & current.wrapping_neg();
            let ripple = current + low;
            let succ = (((ripple ^ current) >> 2) / low) | ripple;
            (succ < self.limit).then_some(succ)
        };
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn combinations_in_colex_order() {
        let all: Vec<u128> = Combinations::new(4, 2).collect();
        assert_eq!(all, alloc::vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(Combinations::new(3, 0).collect::<Vec<_>>(), alloc::vec![0]);
        assert_eq!(Combinations::new(3, 3).collect::<Vec<_>>(), alloc::vec![0b111]);
        assert_eq!(Combinations::new(64, 1).count(), 64);
        assert_eq!(Combinations::new(64, 64).count(), 1);
    }
}
