//! Multi-threaded level scan with the same result and evaluation count as
//! the sequential one.

use rayon::prelude::*;
use spread_core::solver::{ComponentSearch, LevelOutcome, LevelSearch};

/// Scans candidates in fixed-size chunks; within a chunk the lowest
/// spreading position wins, so the answer matches a front-to-back scan.
#[derive(Debug, Clone, Copy)]
pub struct Parallel {
    chunk: usize,
}

impl Default for Parallel {
    fn default() -> Self {
        Parallel { chunk: 1 << 12 }
    }
}

impl Parallel {
    pub fn with_chunk(chunk: usize) -> Self {
        Parallel { chunk: chunk.max(1) }
    }
}

impl LevelSearch for Parallel {
    fn scan(&mut self, component: &ComponentSearch, size: usize, allowance: Option<u64>) -> LevelOutcome {
        let mut candidates = component.candidates(size);
        let mut evaluations = 0u64;
        let mut chunk = Vec::with_capacity(self.chunk);
        loop {
            let room = allowance.map_or(self.chunk, |a| ((a - evaluations) as usize).min(self.chunk));
            chunk.clear();
            chunk.extend(candidates.by_ref().take(room));
            if chunk.is_empty() {
                return if room == 0 && candidates.next().is_some() {
                    LevelOutcome::Exhausted { evaluations }
                } else {
                    LevelOutcome::NotFound { evaluations }
                };
            }
            if let Some(pos) = chunk.par_iter().position_first(|&set| component.percolates(set)) {
                return LevelOutcome::Found { set: chunk[pos], evaluations: evaluations + pos as u64 + 1 };
            }
            evaluations += chunk.len() as u64;
        }
    }
}
