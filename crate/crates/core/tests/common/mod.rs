//! Brute-force reference implementations, written straight from the rule with
//! no incremental bookkeeping and no pruning.

#![allow(dead_code)]

use proptest::prelude::*;
use spread_core::{Graph, Limit, SpreadParams, VertexSet};

pub fn white_count(g: &Graph, blue: &[bool], v: usize) -> usize {
    g.neighbors(v).iter().filter(|&&w| !blue[w]).count()
}

pub fn is_eligible(g: &Graph, params: SpreadParams, blue: &[bool], w: usize) -> bool {
    if blue[w] {
        return false;
    }
    let blue_nbrs: Vec<usize> = g.neighbors(w).iter().copied().filter(|&u| blue[u]).collect();
    blue_nbrs.len() >= params.p() && blue_nbrs.iter().any(|&u| params.q().admits(white_count(g, blue, u)))
}

/// Colors eligible vertices one at a time; `choose` picks among the eligible.
pub fn naive_closure_with(
    g: &Graph,
    params: SpreadParams,
    seed: &[usize],
    mut choose: impl FnMut(&[usize]) -> usize,
) -> Vec<usize> {
    let mut blue = vec![false; g.order()];
    for &v in seed {
        blue[v] = true;
    }
    loop {
        let eligible: Vec<usize> = (0..g.order()).filter(|&w| is_eligible(g, params, &blue, w)).collect();
        if eligible.is_empty() {
            break;
        }
        blue[choose(&eligible)] = true;
    }
    (0..g.order()).filter(|&v| blue[v]).collect()
}

pub fn naive_closure(g: &Graph, params: SpreadParams, seed: &[usize]) -> Vec<usize> {
    naive_closure_with(g, params, seed, |e| e[0])
}

pub fn naive_spreads(g: &Graph, params: SpreadParams, seed: &[usize]) -> bool {
    naive_closure(g, params, seed).len() == g.order()
}

/// Minimum spreading set size by trying every subset.
pub fn naive_sigma(g: &Graph, params: SpreadParams) -> usize {
    let n = g.order();
    assert!(n <= 16, "oracle is exponential");
    (0u32..1 << n)
        .filter(|&mask| {
            let seed: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            naive_spreads(g, params, &seed)
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .expect("the full vertex set spreads")
}

pub fn set(n: usize, vs: &[usize]) -> VertexSet {
    VertexSet::from_vertices(n, vs.iter().copied())
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), proptest::collection::vec(any::<bool>(), pairs), 0.0f64..1.0)
    })
    .prop_map(|(n, bits, _)| {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
    })
}

/// Random labelled tree from a Prüfer-like parent array.
pub fn arb_tree(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<proptest::sample::Index>(), n.saturating_sub(1))))
        .prop_map(|(n, parents)| {
            let edges = parents.iter().enumerate().map(|(i, idx)| (i + 1, idx.index(i + 1)));
            Graph::from_edges(n, edges).unwrap()
        })
}

pub fn arb_limit() -> impl Strategy<Value = Limit> {
    prop_oneof![(1usize..=4).prop_map(Limit::Finite), Just(Limit::Infinite)]
}

pub fn arb_params() -> impl Strategy<Value = SpreadParams> {
    (1usize..=4, arb_limit()).prop_map(|(p, q)| SpreadParams::new(p, q).unwrap())
}

pub fn arb_subset(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(any::<bool>(), n)
        .prop_map(|bits| bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i).collect())
}
