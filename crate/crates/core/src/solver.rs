//! Exact spreading numbers for desk-scale graphs.
//!
//! Candidate sets are enumerated by ascending cardinality, so the first
//! spreading set found is a minimum one. Each connected component is solved on
//! its own: spreading never crosses components. Within a component every
//! vertex of degree `< p` is a fixed member, the search starts at the best
//! known lower bound, and sets in which no member could ever force are skipped
//! without a closure evaluation.

use alloc::vec::Vec;
use core::fmt;

use crate::engine::{self, SpreadTrace};
use crate::mask::{bit, iter_bits, iter_index_bits, Combinations, MaskGraph, MAX_ORDER};
use crate::{Graph, SpreadParams, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Exact,
    Formula,
    Open,
    NotCovered,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::Formula => "formula",
            Status::Open => "open",
            Status::NotCovered => "not_covered",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A spreading number together with how it was obtained.
///
/// `value` is `None` exactly when the status is `Open` or `NotCovered`. A
/// witness, when present, has `value` members and spreads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaResult {
    pub value: Option<usize>,
    pub status: Status,
    pub witness: Option<VertexSet>,
    pub trace: Option<SpreadTrace>,
}

impl SigmaResult {
    pub fn formula(value: usize) -> Self {
        SigmaResult { value: Some(value), status: Status::Formula, witness: None, trace: None }
    }

    pub fn open() -> Self {
        SigmaResult { value: None, status: Status::Open, witness: None, trace: None }
    }

    pub fn not_covered() -> Self {
        SigmaResult { value: None, status: Status::NotCovered, witness: None, trace: None }
    }

    /// Exact result with a witness; the trace is recomputed and checked.
    pub fn exact(graph: &Graph, params: SpreadParams, witness: VertexSet) -> Self {
        let trace = engine::closure(graph, params, &witness);
        assert!(trace.final_set.is_full(), "witness does not spread");
        SigmaResult {
            value: Some(witness.len()),
            status: Status::Exact,
            witness: Some(witness),
            trace: Some(trace),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    /// The value lies in `lower..=upper`; `lower` is proven, `upper` is witnessed.
    #[error("budget of {evaluations} closure evaluations exhausted; value in [{lower}, {upper}]")]
    BudgetExhausted { lower: usize, upper: usize, evaluations: u64 },
    #[error("component with {0} vertices exceeds the exhaustive-search limit")]
    TooLarge(usize),
    #[error(transparent)]
    Invalid(#[from] crate::Error),
}

/// Lower bound `max(min(p, n), #{v : deg v < p}, f(n, p))`,
/// the last term only for trees and `p ≥ 2`.
pub fn lower_bound(graph: &Graph, params: SpreadParams) -> usize {
    let n = graph.order();
    let p = params.p();
    let low_degree = (0..n).filter(|&v| graph.degree(v) < p).count();
    let mut bound = p.min(n).max(low_degree);
    if p >= 2 && graph.is_tree() {
        bound = bound.max(crate::tree::f_bound(n, p));
    }
    bound
}

/// Search space of one connected component, in local ids `0..order`.
#[derive(Debug, Clone)]
pub struct ComponentSearch {
    vertices: Vec<usize>,
    mask: MaskGraph,
    params: SpreadParams,
    fixed: u64,
    free: Vec<usize>,
    lower: usize,
}

impl ComponentSearch {
    fn new(graph: &Graph, vertices: Vec<usize>, params: SpreadParams) -> Result<Self, SolveError> {
        if vertices.len() > MAX_ORDER {
            return Err(SolveError::TooLarge(vertices.len()));
        }
        let sub = graph.induced_subgraph(&vertices);
        let mask = MaskGraph::new(&sub);
        let p = params.p();
        let fixed = (0..sub.order()).filter(|&v| sub.degree(v) < p).fold(0, |m, v| m | bit(v));
        let free = (0..sub.order()).filter(|&v| fixed & bit(v) == 0).collect();
        let lower = lower_bound(&sub, params);
        Ok(ComponentSearch { vertices, mask, params, fixed, free, lower })
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn lower_bound(&self) -> usize {
        self.lower
    }

    /// Vertices every spreading set must contain.
    pub fn fixed_count(&self) -> usize {
        self.fixed.count_ones() as usize
    }

    /// Candidate sets of total cardinality `size`, in colex order over the
    /// free vertices. Sets that cannot start the process are skipped.
    pub fn candidates(&self, size: usize) -> impl Iterator<Item = u64> + '_ {
        let picks = size.checked_sub(self.fixed_count());
        let combos = picks
            .filter(|&r| r <= self.free.len())
            .map(|r| Combinations::new(self.free.len(), r));
        combos
            .into_iter()
            .flatten()
            .map(move |index_mask| {
                iter_index_bits(index_mask).fold(self.fixed, |m, i| m | bit(self.free[i]))
            })
            .filter(move |&set| self.mask.can_start(self.params, set))
    }

    pub fn percolates(&self, set: u64) -> bool {
        self.mask.percolates(self.params, set)
    }

    pub fn to_global(&self, set: u64) -> impl Iterator<Item = usize> + '_ {
        iter_bits(set).map(move |v| self.vertices[v])
    }

    fn restrict(&self, global: &VertexSet) -> u64 {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, &v)| global.contains(v))
            .fold(0, |m, (i, _)| m | bit(i))
    }
}

/// Outcome of scanning one cardinality level of one component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelOutcome {
    /// The first spreading candidate in canonical order.
    Found { set: u64, evaluations: u64 },
    NotFound { evaluations: u64 },
    /// The allowance ran out before the level was decided.
    Exhausted { evaluations: u64 },
}

/// Strategy for scanning a level. Implementations must return the first
/// spreading candidate in [`ComponentSearch::candidates`] order and charge
/// exactly the evaluations a front-to-back scan would.
pub trait LevelSearch {
    fn scan(&mut self, component: &ComponentSearch, size: usize, allowance: Option<u64>) -> LevelOutcome;
}

/// Front-to-back scan on the calling thread.
#[derive(Debug, Default, Clone, Copy)]
pub struct Sequential;

impl LevelSearch for Sequential {
    fn scan(&mut self, component: &ComponentSearch, size: usize, allowance: Option<u64>) -> LevelOutcome {
        let mut evaluations = 0u64;
        for set in component.candidates(size) {
            if allowance == Some(evaluations) {
                return LevelOutcome::Exhausted { evaluations };
            }
            evaluations += 1;
            if component.percolates(set) {
                return LevelOutcome::Found { set, evaluations };
            }
        }
        LevelOutcome::NotFound { evaluations }
    }
}

/// Configurable exact search.
#[derive(Debug, Clone)]
pub struct ExactSolver<'g> {
    graph: &'g Graph,
    params: SpreadParams,
    budget: Option<u64>,
    upper_hint: Option<VertexSet>,
}

struct ComponentPlan {
    search: ComponentSearch,
    /// Known spreading set of the component (local mask), if any.
    hint: Option<u64>,
}

impl<'g> ExactSolver<'g> {
    pub fn new(graph: &'g Graph, params: SpreadParams) -> Self {
        ExactSolver { graph, params, budget: None, upper_hint: None }
    }

    /// Limit on closure evaluations.
    pub fn budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    /// A known spreading set of the whole graph. Sizes at or above its
    /// restriction to a component are not searched in that component.
    pub fn upper_hint(mut self, set: VertexSet) -> Self {
        self.upper_hint = Some(set);
        self
    }

    pub fn components(&self) -> Result<Vec<ComponentSearch>, SolveError> {
        self.graph
            .components()
            .into_iter()
            .map(|c| ComponentSearch::new(self.graph, c, self.params))
            .collect()
    }

    pub fn solve(&self) -> Result<SigmaResult, SolveError> {
        self.solve_using(&mut Sequential)
    }

    pub fn solve_using<L: LevelSearch + ?Sized>(&self, levels: &mut L) -> Result<SigmaResult, SolveError> {
        let mut plans = Vec::new();
        for search in self.components()? {
            plans.push(ComponentPlan { search, hint: None });
        }
        let mut evaluations = 0u64;
        if let Some(hint) = &self.upper_hint {
            if hint.universe() != self.graph.order() {
                return Err(SolveError::Invalid(crate::Error::InvalidParameter(
                    "hint universe does not match graph order".into(),
                )));
            }
            for plan in &mut plans {
                let local = plan.search.restrict(hint);
                evaluations += 1;
                if plan.search.percolates(local) {
                    plan.hint = Some(local);
                }
            }
        }

        let mut solved: Vec<Option<u64>> = alloc::vec![None; plans.len()];
        for (i, plan) in plans.iter().enumerate() {
            let search = &plan.search;
            let cap = plan.hint.map_or(search.order(), |h| h.count_ones() as usize);
            let mut found = None;
            for size in search.lower_bound()..=cap {
                if size == cap {
                    if let Some(h) = plan.hint {
                        found = Some(h);
                        break;
                    }
                }
                let allowance = self.budget.map(|b| b.saturating_sub(evaluations));
                match levels.scan(search, size, allowance) {
                    LevelOutcome::Found { set, evaluations: e } => {
                        evaluations += e;
                        found = Some(set);
                        break;
                    }
                    LevelOutcome::NotFound { evaluations: e } => evaluations += e,
                    LevelOutcome::Exhausted { evaluations: e } => {
                        evaluations += e;
                        return Err(self.exhausted(&plans, &solved, i, size, evaluations));
                    }
                }
            }
            solved[i] = Some(found.expect("the whole component always spreads"));
        }

        let mut witness = VertexSet::new(self.graph.order());
        for (plan, set) in plans.iter().zip(&solved) {
            for v in plan.search.to_global(set.expect("solved")) {
                witness.insert(v);
            }
        }
        Ok(SigmaResult::exact(self.graph, self.params, witness))
    }

    fn exhausted(
        &self,
        plans: &[ComponentPlan],
        solved: &[Option<u64>],
        current: usize,
        size: usize,
        evaluations: u64,
    ) -> SolveError {
        let mut lower = 0;
        let mut upper = 0;
        for (i, (plan, done)) in plans.iter().zip(solved).enumerate() {
            let best_upper = plan.hint.map_or(plan.search.order(), |h| h.count_ones() as usize);
            match done {
                Some(set) => {
                    lower += set.count_ones() as usize;
                    upper += set.count_ones() as usize;
                }
                None => {
                    lower += if i == current { size } else { plan.search.lower_bound() };
                    upper += best_upper;
                }
            }
        }
        SolveError::BudgetExhausted { lower, upper, evaluations }
    }

    /// Every minimum spreading set, up to `limit` of them, in canonical order.
    pub fn minimum_sets(&self, limit: usize) -> Result<Vec<VertexSet>, SolveError> {
        let minimum = self.solve()?;
        let witness = minimum.witness.expect("exact results carry a witness");
        let mut per_component: Vec<Vec<Vec<usize>>> = Vec::new();
        for search in self.components()? {
            let size = search.restrict(&witness).count_ones() as usize;
            let sets: Vec<Vec<usize>> = search
                .candidates(size)
                .filter(|&s| search.percolates(s))
                .take(limit)
                .map(|s| search.to_global(s).collect())
                .collect();
            per_component.push(sets);
        }
        let n = self.graph.order();
        let mut out: Vec<VertexSet> = alloc::vec![VertexSet::new(n)];
        for sets in per_component {
            let mut next = Vec::new();
            'outer: for base in &out {
                for extra in &sets {
                    if next.len() == limit {
                        break 'outer;
                    }
                    let mut combined = base.clone();
                    for &v in extra {
                        combined.insert(v);
                    }
                    next.push(combined);
                }
            }
            out = next;
        }
        for set in &out {
            assert!(engine::is_spreading_set(self.graph, self.params, set));
        }
        Ok(out)
    }
}

pub fn sigma_exact(graph: &Graph, params: SpreadParams, budget: Option<u64>) -> Result<SigmaResult, SolveError> {
    ExactSolver::new(graph, params).budget(budget).solve()
}

pub fn enumerate_minimum_sets(graph: &Graph, params: SpreadParams, limit: usize) -> Result<Vec<VertexSet>, SolveError> {
    ExactSolver::new(graph, params).minimum_sets(limit)
}

/// `σ(p,q)(G)` as a bare number; panics if the search fails.
pub fn sigma_value(graph: &Graph, params: SpreadParams) -> usize {
    sigma_exact(graph, params, None)
        .expect("desk-scale instance")
        .value
        .expect("exact value")
}
