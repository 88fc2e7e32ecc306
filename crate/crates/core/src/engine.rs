//! The spreading color change rule, closures and trace validation.
//!
//! Vertices are colored one at a time. Eligibility is monotone: blue sets only
//! grow and a blue vertex's white-neighbor count only shrinks, so once a white
//! vertex is eligible it stays eligible until it is colored. Every application
//! order therefore reaches the same closure; [`Canonical`] fixes one order so
//! traces are reproducible.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::{Error, Graph, SpreadParams, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub forcer: usize,
    pub forced: usize,
}

/// Replayable record of a closure computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadTrace {
    pub initial: VertexSet,
    pub steps: Vec<Step>,
    pub final_set: VertexSet,
}

/// Chooses the next vertex to color among the currently eligible ones.
pub trait Scheduler {
    fn pick(&mut self, eligible: &BTreeSet<usize>) -> usize;
}

/// Lowest eligible vertex id first.
#[derive(Debug, Default, Clone, Copy)]
pub struct Canonical;

impl Scheduler for Canonical {
    fn pick(&mut self, eligible: &BTreeSet<usize>) -> usize {
        *eligible.first().expect("pick called with an eligible vertex")
    }
}

impl<F: FnMut(&BTreeSet<usize>) -> usize> Scheduler for F {
    fn pick(&mut self, eligible: &BTreeSet<usize>) -> usize {
        self(eligible)
    }
}

/// Incremental coloring state: per-vertex blue/white neighbor counts and the
/// number of blue neighbors currently allowed to force.
struct Coloring<'g> {
    graph: &'g Graph,
    params: SpreadParams,
    blue: VertexSet,
    blue_nbrs: Vec<usize>,
    white_nbrs: Vec<usize>,
    forcing_nbrs: Vec<usize>,
}

impl<'g> Coloring<'g> {
    fn new(graph: &'g Graph, params: SpreadParams, initial: &VertexSet) -> Self {
        let n = graph.order();
        let mut state = Coloring {
            graph,
            params,
            blue: initial.clone(),
            blue_nbrs: alloc::vec![0; n],
            white_nbrs: alloc::vec![0; n],
            forcing_nbrs: alloc::vec![0; n],
        };
        for v in 0..n {
            let b = graph.neighbors_in(v, initial);
            state.blue_nbrs[v] = b;
            state.white_nbrs[v] = graph.degree(v) - b;
        }
        for u in initial.iter() {
            if params.q().admits(state.white_nbrs[u]) {
                for &w in graph.neighbors(u) {
                    if !state.blue.contains(w) {
                        state.forcing_nbrs[w] += 1;
                    }
                }
            }
        }
        state
    }

    #[inline]
    fn eligible(&self, w: usize) -> bool {
        !self.blue.contains(w) && self.blue_nbrs[w] >= self.params.p() && self.forcing_nbrs[w] > 0
    }

    fn forcer_of(&self, w: usize) -> Option<usize> {
        self.graph
            .neighbors(w)
            .iter()
            .copied()
            .find(|&u| self.blue.contains(u) && self.params.q().admits(self.white_nbrs[u]))
    }

    /// Colors `w` blue and reports white vertices whose eligibility may have changed.
    fn color(&mut self, w: usize, touched: &mut Vec<usize>) {
        let q = self.params.q();
        self.blue.insert(w);
        if q.admits(self.white_nbrs[w]) {
            for &x in self.graph.neighbors(w) {
                if !self.blue.contains(x) {
                    self.forcing_nbrs[x] += 1;
                    touched.push(x);
                }
            }
        }
        for &x in self.graph.neighbors(w) {
            self.blue_nbrs[x] += 1;
            self.white_nbrs[x] -= 1;
            if self.blue.contains(x) {
                if q.finite() == Some(self.white_nbrs[x]) {
                    // x just became able to force
                    for &y in self.graph.neighbors(x) {
                        if !self.blue.contains(y) {
                            self.forcing_nbrs[y] += 1;
                            touched.push(y);
                        }
                    }
                }
            } else {
                touched.push(x);
            }
        }
    }
}

/// Closure of `initial` under the canonical order: lowest eligible white vertex
/// first, forced by its lowest-id blue neighbor that may force.
pub fn closure(graph: &Graph, params: SpreadParams, initial: &VertexSet) -> SpreadTrace {
    closure_scheduled(graph, params, initial, &mut Canonical)
}

/// Closure with a caller-chosen application order. The final set does not
/// depend on the scheduler.
pub fn closure_scheduled<S: Scheduler + ?Sized>(
    graph: &Graph,
    params: SpreadParams,
    initial: &VertexSet,
    scheduler: &mut S,
) -> SpreadTrace {
    assert_eq!(initial.universe(), graph.order(), "vertex set universe must match graph order");
    let mut state = Coloring::new(graph, params, initial);
    let mut eligible: BTreeSet<usize> = (0..graph.order()).filter(|&w| state.eligible(w)).collect();
    let mut steps = Vec::new();
    let mut touched = Vec::new();
    while !eligible.is_empty() {
        let w = scheduler.pick(&eligible);
        assert!(eligible.remove(&w), "scheduler picked a non-eligible vertex {w}");
        let forcer = state.forcer_of(w).expect("eligible vertex has a forcing neighbor");
        steps.push(Step { forcer, forced: w });
        touched.clear();
        state.color(w, &mut touched);
        for &x in &touched {
            if state.eligible(x) {
                eligible.insert(x);
            }
        }
    }
    SpreadTrace {
        initial: initial.clone(),
        steps,
        final_set: state.blue,
    }
}

pub fn is_spreading_set(graph: &Graph, params: SpreadParams, set: &VertexSet) -> bool {
    closure(graph, params, set).final_set.is_full()
}

/// Whether the vertices of `sequence` can turn blue in exactly that order,
/// starting from `set`. The sequence must enumerate `V \ set` exactly once.
pub fn check_spreading_sequence(
    graph: &Graph,
    params: SpreadParams,
    set: &VertexSet,
    sequence: &[usize],
) -> Result<bool, Error> {
    let n = graph.order();
    let mut seen = set.clone();
    for &v in sequence {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, order: n });
        }
        if !seen.insert(v) {
            return Err(Error::InvalidSequence(format!(
                "vertex {v} is repeated or already in the initial set"
            )));
        }
    }
    if !seen.is_full() {
        return Err(Error::InvalidSequence(format!(
            "sequence misses {} vertices outside the initial set",
            n - seen.len()
        )));
    }
    let mut state = Coloring::new(graph, params, set);
    let mut touched = Vec::new();
    for &v in sequence {
        if !state.eligible(v) {
            return Ok(false);
        }
        touched.clear();
        state.color(v, &mut touched);
    }
    Ok(true)
}

/// Some `v ∈ set` with `|N_S(v)| ≥ deg(v) - q`, i.e. a vertex that could force
/// first. Every spreading set other than `V` has one.
pub fn first_forcer_candidate(graph: &Graph, params: SpreadParams, set: &VertexSet) -> Option<usize> {
    set.iter()
        .find(|&v| params.q().admits(graph.degree(v) - graph.neighbors_in(v, set)))
}

impl SpreadTrace {
    /// Re-checks every step against the rule from scratch.
    pub fn replay(&self, graph: &Graph, params: SpreadParams) -> Result<(), Error> {
        let mut blue = self.initial.clone();
        for (i, step) in self.steps.iter().enumerate() {
            let Step { forcer, forced } = *step;
            if forced >= graph.order() || forcer >= graph.order() {
                return Err(Error::InvalidSequence(format!("step {i}: vertex out of range")));
            }
            if blue.contains(forced) {
                return Err(Error::InvalidSequence(format!("step {i}: {forced} is already blue")));
            }
            if graph.neighbors_in(forced, &blue) < params.p() {
                return Err(Error::InvalidSequence(format!(
                    "step {i}: {forced} has fewer than {} blue neighbors",
                    params.p()
                )));
            }
            let white = graph.degree(forcer) - graph.neighbors_in(forcer, &blue);
            if !blue.contains(forcer) || !graph.has_edge(forcer, forced) || !params.q().admits(white) {
                return Err(Error::InvalidSequence(format!(
                    "step {i}: {forcer} cannot force {forced}"
                )));
            }
            blue.insert(forced);
        }
        if blue != self.final_set {
            return Err(Error::InvalidSequence("final set differs from replay".into()));
        }
        Ok(())
    }

    pub fn forced_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().map(|s| s.forced)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;
    use crate::Limit;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied())
    }

    #[test]
    fn c4_single_vertex_is_stuck_under_zero_forcing() {
        let g = FamilySpec::Cycle(4).build().unwrap();
        let t = closure(&g, SpreadParams::finite(1, 1), &set(4, &[0]));
        assert_eq!(t.final_set.to_vec(), alloc::vec![0]);
        assert!(t.steps.is_empty());
    }

    #[test]
    fn alternate_path_vertices_percolate_with_threshold_two() {
        let g = FamilySpec::Path(5).build().unwrap();
        let t = closure(&g, SpreadParams::unbounded(2), &set(5, &[0, 2, 4]));
        assert!(t.final_set.is_full());
        assert_eq!(t.forced_vertices().collect::<Vec<_>>(), alloc::vec![1, 3]);
        t.replay(&g, SpreadParams::unbounded(2)).unwrap();
    }

    #[test]
    fn empty_set_stays_empty() {
        let g = FamilySpec::Complete(4).build().unwrap();
        let t = closure(&g, SpreadParams::finite(1, 3), &VertexSet::new(4));
        assert!(t.final_set.is_empty());
    }

    #[test]
    fn three_vertices_of_k5_spread_with_two_two() {
        let g = FamilySpec::Complete(5).build().unwrap();
        assert!(is_spreading_set(&g, SpreadParams::finite(2, 2), &set(5, &[1, 3, 4])));
        assert!(!is_spreading_set(&g, SpreadParams::finite(2, 2), &set(5, &[1, 3])));
    }

    #[test]
    fn whole_vertex_set_is_spreading() {
        let g = FamilySpec::Grid(3, 4).build().unwrap();
        assert!(is_spreading_set(&g, SpreadParams::finite(5, 1), &VertexSet::full(12)));
    }

    #[test]
    fn sequence_must_be_a_permutation_of_the_complement() {
        let g = FamilySpec::Path(3).build().unwrap();
        let params = SpreadParams::finite(1, 1);
        let s = set(3, &[0]);
        assert!(check_spreading_sequence(&g, params, &s, &[1]).is_err());
        assert!(check_spreading_sequence(&g, params, &s, &[1, 1, 2]).is_err());
        assert!(check_spreading_sequence(&g, params, &s, &[0, 1, 2]).is_err());
        assert_eq!(check_spreading_sequence(&g, params, &s, &[1, 2]), Ok(true));
        assert_eq!(check_spreading_sequence(&g, params, &s, &[2, 1]), Ok(false));
        assert_eq!(check_spreading_sequence(&g, params, &VertexSet::full(3), &[]), Ok(true));
    }

    #[test]
    fn replay_rejects_tampered_traces() {
        let g = FamilySpec::Path(4).build().unwrap();
        let params = SpreadParams::finite(1, 1);
        let mut t = closure(&g, params, &set(4, &[0]));
        assert_eq!(t.steps.len(), 3);
        t.replay(&g, params).unwrap();
        t.steps.swap(0, 1);
        assert!(t.replay(&g, params).is_err());
    }

    #[test]
    fn forcer_is_lowest_admissible_blue_neighbor() {
        // Star center 0 with leaves 1..4; all leaves blue, center forced by leaf 1.
        let g = FamilySpec::Star(5).build().unwrap();
        let t = closure(&g, SpreadParams::new(2, Limit::Infinite).unwrap(), &set(5, &[1, 2, 3, 4]));
        assert_eq!(t.steps, alloc::vec![Step { forcer: 1, forced: 0 }]);
    }

    #[test]
    fn first_forcer_candidate_matches_definition() {
        let g = FamilySpec::Cycle(6).build().unwrap();
        let params = SpreadParams::finite(1, 1);
        assert_eq!(first_forcer_candidate(&g, params, &set(6, &[0, 3])), None);
        assert_eq!(first_forcer_candidate(&g, params, &set(6, &[0, 1])), Some(0));
    }
}
