use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spread_core::engine::Scheduler;

/// Picks a uniformly random eligible vertex; reproducible from its seed.
#[derive(Debug, Clone)]
pub struct RandomScheduler {
    rng: ChaCha8Rng,
}

impl RandomScheduler {
    pub fn new(seed: u64) -> Self {
        RandomScheduler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Scheduler for RandomScheduler {
    fn pick(&mut self, eligible: &BTreeSet<usize>) -> usize {
        let k = self.rng.gen_range(0..eligible.len());
        *eligible.iter().nth(k).expect("index below length")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use spread_core::engine::closure_scheduled;
    use spread_core::{closure, FamilySpec, SpreadParams, VertexSet};

    #[test]
    fn same_seed_same_trace() {
        let g = FamilySpec::Grid(5, 4).build().unwrap();
        let params = SpreadParams::finite(2, 2);
        let set = VertexSet::from_vertices(20, [0, 5, 10, 15, 19]);
        let a = closure_scheduled(&g, params, &set, &mut RandomScheduler::new(7));
        let b = closure_scheduled(&g, params, &set, &mut RandomScheduler::new(7));
        assert_eq!(a, b);
        assert_eq!(a.final_set, closure(&g, params, &set).final_set);
    }
}
