//! Spreading in trees.
//!
//! * `p = 1`: the `q`-forcing number of a tree equals the size of a smallest
//!   partition of its vertices into induced subtrees of maximum degree at most
//!   `q + 1`, computed by [`pq_partition`] in one bottom-up pass.
//! * `p ≥ 2`: the value does not depend on `q`, so [`sigma_tree`] searches
//!   under `(p, 1)` with all vertices of degree `< p` fixed.
//! * Bounds: `f(n, p) ≤ σ ≤ n - 1` (`p = 2`) or `≤ n` (`p ≥ 3`), and the
//!   property `𝒫(n, p)` that characterizes trees attaining `f(n, p)`.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::mask::{bit, iter_bits, iter_index_bits, Combinations, MaskGraph};
use crate::solver::{ExactSolver, SigmaResult, SolveError};
use crate::{Error, Graph, Limit, SpreadParams, VertexSet};

/// `f(n, p) = ⌈((p - 1) n + 1) / p⌉`, without argument checks.
pub(crate) fn f_bound(n: usize, p: usize) -> usize {
    ((p - 1) * n + 1).div_ceil(p)
}

/// Lower bound `f(n, p)` on `σ(p,q)(T)` for any tree of order `n` and `p ≥ 2`.
pub fn tree_lower_bound(n: usize, p: usize) -> Result<usize, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("tree order must be at least 1".into()));
    }
    if p < 2 {
        return Err(Error::InvalidParameter(format!("the tree lower bound needs p >= 2, got {p}")));
    }
    Ok(f_bound(n, p))
}

fn require_tree(graph: &Graph) -> Result<(), Error> {
    if graph.is_tree() {
        Ok(())
    } else {
        Err(Error::NotATree)
    }
}

/// A tree rooted at `root`, with BFS depths (the layers `X_0, X_1, …`).
#[derive(Debug, Clone)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    pub fn new(tree: &Graph, root: usize) -> Result<Self, Error> {
        require_tree(tree)?;
        let n = tree.order();
        if root >= n {
            return Err(Error::VertexOutOfRange { vertex: root, order: n });
        }
        let mut parent = alloc::vec![None; n];
        let mut depth = alloc::vec![0; n];
        let mut children = alloc::vec![Vec::new(); n];
        let mut seen = alloc::vec![false; n];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            for &w in tree.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    depth[w] = depth[u] + 1;
                    children[u].push(w);
                    queue.push_back(w);
                }
            }
        }
        Ok(RootedTree { root, parent, depth, children })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Children in increasing id order.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Layers `X_0, …, X_d`, each sorted by id.
    pub fn layers(&self) -> Vec<Vec<usize>> {
        let height = self.depth.iter().copied().max().unwrap_or(0);
        let mut layers = alloc::vec![Vec::new(); height + 1];
        for (v, &d) in self.depth.iter().enumerate() {
            layers[d].push(v);
        }
        layers
    }

    /// Vertices of the subtree hanging from `v`.
    pub fn subtree(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend(self.children[u].iter().copied());
        }
        out.sort_unstable();
        out
    }
}

/// Disjoint vertex sets covering a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub parts: Vec<Vec<usize>>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Checks that the parts cover `V(T)` disjointly and that each induces a
    /// subtree of maximum degree at most `q + 1`.
    pub fn validate(&self, tree: &Graph, q: usize) -> Result<(), Error> {
        let n = tree.order();
        let mut seen = VertexSet::new(n);
        for part in &self.parts {
            for &v in part {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, order: n });
                }
                if !seen.insert(v) {
                    return Err(Error::InvalidParameter(format!("vertex {v} appears in two parts")));
                }
            }
            let sub = tree.induced_subgraph(part);
            if !sub.is_connected() || sub.order() == 0 {
                return Err(Error::InvalidParameter(format!("part {part:?} is not connected")));
            }
            if sub.max_degree() > q + 1 {
                return Err(Error::InvalidParameter(format!(
                    "part {part:?} has a vertex of degree {} > {}",
                    sub.max_degree(),
                    q + 1
                )));
            }
        }
        if !seen.is_full() {
            return Err(Error::InvalidParameter("parts do not cover the tree".into()));
        }
        Ok(())
    }
}

/// Smallest partition of a tree into induced subtrees of maximum degree at
/// most `q + 1`.
///
/// The tree is rooted at its lowest-id non-leaf vertex. Vertices are visited
/// deepest layer first, lowest id first within a layer. A vertex whose degree
/// in what is left of the tree exceeds `q + 1` keeps its `q + 1` lowest-id
/// remaining children; each other child's subtree becomes a part, and the
/// vertex together with the kept subtrees becomes a part and is cut off. What
/// remains at the end is the last part.
pub fn pq_partition(tree: &Graph, q: usize) -> Result<Partition, Error> {
    require_tree(tree)?;
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1".into()));
    }
    let n = tree.order();
    let keep = q + 1;
    if tree.max_degree() <= keep {
        return Ok(Partition { parts: alloc::vec![(0..n).collect()] });
    }
    let root = (0..n).find(|&v| tree.degree(v) >= 2).unwrap_or(0);
    let rooted = RootedTree::new(tree, root)?;
    let mut assigned = alloc::vec![false; n];
    let mut parts = Vec::new();

    let collect = |start: usize, assigned: &mut Vec<bool>| {
        let mut part = Vec::new();
        let mut stack = alloc::vec![start];
        while let Some(u) = stack.pop() {
            assigned[u] = true;
            part.push(u);
            stack.extend(rooted.children(u).iter().copied().filter(|&c| !assigned[c]));
        }
        part.sort_unstable();
        part
    };

    for layer in rooted.layers().iter().rev() {
        for &x in layer {
            let alive: Vec<usize> = rooted.children(x).iter().copied().filter(|&c| !assigned[c]).collect();
            let degree = alive.len() + usize::from(rooted.parent(x).is_some());
            if degree <= keep {
                continue;
            }
            for &c in &alive[keep..] {
                let part = collect(c, &mut assigned);
                parts.push(part);
            }
            let part = collect(x, &mut assigned);
            parts.push(part);
        }
    }
    if !assigned[root] {
        let part = collect(root, &mut assigned);
        parts.push(part);
    }
    Ok(Partition { parts })
}

/// `σ(p,q)(T)` with a validated witness.
///
/// For `p = 1` and finite `q` the value is the partition size and the witness
/// takes the lowest-id leaf of every part. For `p = 1, q = ∞` any single
/// vertex spreads. For `p ≥ 2` the search runs under `(p, 1)`; the result
/// holds for every `q`.
pub fn sigma_tree(tree: &Graph, params: SpreadParams) -> Result<SigmaResult, SolveError> {
    require_tree(tree)?;
    let n = tree.order();
    if params.p() >= 2 {
        let relaxed = SpreadParams::finite(params.p(), 1);
        let found = ExactSolver::new(tree, relaxed).solve()?;
        let witness = found.witness.expect("exact results carry a witness");
        return Ok(SigmaResult::exact(tree, params, witness));
    }
    let witness = match params.q() {
        Limit::Infinite => VertexSet::from_vertices(n, [0]),
        Limit::Finite(q) => {
            let partition = pq_partition(tree, q)?;
            let seeds = partition.parts.iter().map(|part| {
                let members = VertexSet::from_vertices(n, part.iter().copied());
                *part
                    .iter()
                    .find(|&&v| tree.neighbors_in(v, &members) <= 1)
                    .expect("every finite tree has a leaf")
            });
            VertexSet::from_vertices(n, seeds)
        }
    };
    Ok(SigmaResult::exact(tree, params, witness))
}

/// Upper bound on `σ(p,q)(T)` for trees of order at least 5 and whether a
/// given tree attains it. Independent of `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalBound {
    pub bound: usize,
    pub attained: bool,
    pub reason: String,
}

pub fn tree_upper_extremal(tree: &Graph, params: SpreadParams) -> Result<ExtremalBound, Error> {
    require_tree(tree)?;
    let n = tree.order();
    if n < 5 {
        return Err(Error::InvalidParameter(format!("the extremal bound needs n >= 5, got {n}")));
    }
    let p = params.p();
    let delta = tree.max_degree();
    match p {
        1 => Err(Error::InvalidParameter("the extremal bound needs p >= 2".into())),
        2 => {
            let star = delta == n - 1;
            Ok(ExtremalBound {
                bound: n - 1,
                attained: star,
                reason: if star {
                    format!("tree is the star K_1,{}", n - 1)
                } else {
                    "tree is not a star; removing a degree-3 vertex and a degree-2 vertex (or the path formula) gives at most n-2".into()
                },
            })
        }
        _ => {
            let attained = delta < p;
            Ok(ExtremalBound {
                bound: n,
                attained,
                reason: if attained {
                    format!("max degree {delta} < p = {p}, every vertex must be seeded")
                } else {
                    format!("a vertex of degree {delta} >= p can be left out, so sigma <= n-1")
                },
            })
        }
    }
}

/// Per-vertex bookkeeping of the `𝒫(n, p)` construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PnpStep {
    pub vertex: usize,
    /// `S_i`: seed vertices absorbed at this step.
    pub absorbed: Vec<usize>,
    /// `|V(F_i)|`.
    pub forest_order: usize,
    /// `|N_{F_i}(v_i)|`.
    pub forest_neighbors: usize,
    /// `k_i`: edges of `T[S ∩ V(F_i)]`.
    pub seed_edges: usize,
    /// `c_i`: components of `F_i`.
    pub components: usize,
    /// `|V(F_i)| = k_i + c_i + Σ_{j ≤ i} |N_{F_j}(v_j)|`.
    pub balance_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyPnpReport {
    pub holds: bool,
    pub reason: Option<String>,
    pub n: usize,
    pub p: usize,
    /// `f(n, p)`.
    pub target_size: usize,
    pub set: Vec<usize>,
    pub ordering: Vec<usize>,
    pub steps: Vec<PnpStep>,
    /// `rem(n - 1, p)`.
    pub remainder: usize,
    /// `Σ (|N_{F_i}(v_i)| - p)`.
    pub excess: i64,
    /// `|E(T[S])|`.
    pub set_edges: usize,
    /// `rem(n - 1, p) - Σ (|N_{F_i}(v_i)| - p)`.
    pub required_set_edges: i64,
    pub condition_i: bool,
    pub condition_ii: bool,
    pub condition_iii: bool,
    /// `n - 1 = p (n - |S|) + |E(T[S])| + Σ (|N_{F_i}(v_i)| - p)`.
    pub identity_holds: bool,
}

/// Evaluates property `𝒫(n, p)` for a concrete set and ordering.
///
/// `S_i` collects the not yet absorbed seed vertices lying in a component of
/// `T[S]` that meets `N_S(v_i)`. Only the threshold side of the rule is
/// checked; `q` plays no part.
pub fn check_property_pnp(
    tree: &Graph,
    p: usize,
    set: &VertexSet,
    ordering: &[usize],
) -> Result<PropertyPnpReport, Error> {
    require_tree(tree)?;
    if p < 2 {
        return Err(Error::InvalidParameter(format!("property P(n,p) needs p >= 2, got {p}")));
    }
    let n = tree.order();
    if set.universe() != n {
        return Err(Error::InvalidParameter("set universe does not match tree order".into()));
    }
    let mut covered = set.clone();
    for &v in ordering {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, order: n });
        }
        if !covered.insert(v) {
            return Err(Error::InvalidSequence(format!("vertex {v} is repeated or in S")));
        }
    }
    if !covered.is_full() {
        return Err(Error::InvalidSequence("ordering does not cover V \\ S".into()));
    }

    let seed_component = components_within(tree, set);
    let mut component_absorbed = BTreeSet::new();
    let mut forest = VertexSet::new(n);
    let mut neighbor_total = 0usize;
    let mut steps = Vec::with_capacity(ordering.len());
    for &v in ordering {
        let mut absorbed = Vec::new();
        for &w in tree.neighbors(v) {
            if let Some(c) = seed_component[w] {
                if component_absorbed.insert(c) {
                    absorbed.extend((0..n).filter(|&u| seed_component[u] == Some(c)));
                }
            }
        }
        absorbed.sort_unstable();
        forest.insert(v);
        for &u in &absorbed {
            forest.insert(u);
        }
        let forest_neighbors = tree.neighbors_in(v, &forest);
        neighbor_total += forest_neighbors;
        let seeds_in_forest = VertexSet::from_vertices(n, forest.iter().filter(|&u| set.contains(u)));
        let seed_edges = tree.edges_within(&seeds_in_forest);
        let components = count_components_within(tree, &forest);
        steps.push(PnpStep {
            vertex: v,
            absorbed,
            forest_order: forest.len(),
            forest_neighbors,
            seed_edges,
            components,
            balance_holds: forest.len() == seed_edges + components + neighbor_total,
        });
    }

    let target_size = f_bound(n, p);
    let remainder = (n - 1) % p;
    let excess: i64 = steps.iter().map(|s| s.forest_neighbors as i64 - p as i64).sum();
    let set_edges = tree.edges_within(set);
    let required_set_edges = remainder as i64 - excess;
    let condition_i = steps.iter().all(|s| s.forest_neighbors >= p);
    let condition_ii = remainder as i64 >= excess;
    let condition_iii = set_edges as i64 == required_set_edges;
    let identity_holds =
        (n - 1) as i64 == (p * (n - set.len())) as i64 + set_edges as i64 + excess;

    let reason = if set.len() != target_size {
        Some(format!("|S| = {} but f({n},{p}) = {target_size}", set.len()))
    } else if let Some(s) = steps.iter().find(|s| s.forest_neighbors < p) {
        Some(format!(
            "condition (i) fails at {}: {} < {p} neighbors in F_i",
            s.vertex, s.forest_neighbors
        ))
    } else if !condition_ii {
        Some(format!("condition (ii) fails: rem = {remainder} < {excess}"))
    } else if !condition_iii {
        Some(format!("condition (iii) fails: T[S] has {set_edges} edges, expected {required_set_edges}"))
    } else if !steps.iter().all(|s| s.balance_holds) || !identity_holds {
        Some("counting identities fail".into())
    } else {
        None
    };
    Ok(PropertyPnpReport {
        holds: reason.is_none(),
        reason,
        n,
        p,
        target_size,
        set: set.to_vec(),
        ordering: ordering.to_vec(),
        steps,
        remainder,
        excess,
        set_edges,
        required_set_edges,
        condition_i,
        condition_ii,
        condition_iii,
        identity_holds,
    })
}

/// Component index within `T[set]` for members of `set`.
fn components_within(graph: &Graph, set: &VertexSet) -> Vec<Option<usize>> {
    let n = graph.order();
    let mut label = alloc::vec![None; n];
    let mut next = 0;
    for start in set.iter() {
        if label[start].is_some() {
            continue;
        }
        let mut stack = alloc::vec![start];
        label[start] = Some(next);
        while let Some(u) = stack.pop() {
            for &w in graph.neighbors(u) {
                if set.contains(w) && label[w].is_none() {
                    label[w] = Some(next);
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    label
}

fn count_components_within(graph: &Graph, set: &VertexSet) -> usize {
    components_within(graph, set).iter().flatten().max().map_or(0, |&c| c + 1)
}

/// A set and ordering certifying `𝒫(n, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PnpCertificate {
    pub set: Vec<usize>,
    pub ordering: Vec<usize>,
    pub report: PropertyPnpReport,
}

/// Largest tree order accepted by [`property_pnp_search`].
pub const PNP_SEARCH_LIMIT: usize = 20;

/// Exhaustive search for a `𝒫(n, p)` certificate.
///
/// Sets of size `f(n, p)` containing every vertex of degree `< p` are tried in
/// canonical order; orderings are grown by backtracking over vertices with at
/// least `p` blue neighbors.
pub fn property_pnp_search(tree: &Graph, p: usize) -> Result<Option<PnpCertificate>, Error> {
    require_tree(tree)?;
    let n = tree.order();
    if n > PNP_SEARCH_LIMIT {
        return Err(Error::TooLarge(format!(
            "property search is limited to {PNP_SEARCH_LIMIT} vertices, got {n}"
        )));
    }
    let target = tree_lower_bound(n, p)?;
    let mask = MaskGraph::new(tree);
    let fixed: u64 = (0..n).filter(|&v| tree.degree(v) < p).fold(0, |m, v| m | bit(v));
    let free: Vec<usize> = (0..n).filter(|&v| fixed & bit(v) == 0).collect();
    let Some(picks) = target.checked_sub(fixed.count_ones() as usize) else {
        return Ok(None);
    };
    if picks > free.len() {
        return Ok(None);
    }
    for combo in Combinations::new(free.len(), picks) {
        let seeds = iter_index_bits(combo).fold(fixed, |m, i| m | bit(free[i]));
        let mut visited = BTreeSet::new();
        let mut ordering = Vec::new();
        if extend_ordering(&mask, p, seeds, &mut ordering, &mut visited) {
            let set = VertexSet::from_vertices(n, iter_bits(seeds));
            let report = check_property_pnp(tree, p, &set, &ordering)?;
            if report.holds {
                return Ok(Some(PnpCertificate { set: set.to_vec(), ordering, report }));
            }
        }
    }
    Ok(None)
}

fn extend_ordering(
    mask: &MaskGraph,
    p: usize,
    blue: u64,
    ordering: &mut Vec<usize>,
    visited: &mut BTreeSet<u64>,
) -> bool {
    if blue == mask.all() {
        return true;
    }
    if !visited.insert(blue) {
        return false;
    }
    let white = mask.all() & !blue;
    for v in iter_bits(white) {
        if (mask.neighbors(v) & blue).count_ones() as usize >= p {
            ordering.push(v);
            if extend_ordering(mask, p, blue | bit(v), ordering, visited) {
                return true;
            }
            ordering.pop();
        }
    }
    false
}

/// The tree `T*` attaining `f(n, p)`: seeds `w_1..w_f` get ids `0..f`, the
/// other vertices `v_1..v_k` get ids `f..n`; `v_i` is joined to the `p`
/// consecutive seeds starting at `w_{1+(i-1)(p-1)}` and `v_k` to all
/// remaining seeds. Returns the tree, its seed set and the ordering
/// `(v_1, …, v_k)`. Needs `n ≥ p + 1`.
pub fn extremal_example(n: usize, p: usize) -> Result<(Graph, VertexSet, Vec<usize>), Error> {
    let f = tree_lower_bound(n, p)?;
    if n <= p {
        return Err(Error::InvalidParameter(format!("the construction needs n > p, got n={n}, p={p}")));
    }
    let k = n - f;
    let mut edges = Vec::new();
    for i in 1..=k {
        let first = 1 + (i - 1) * (p - 1);
        let last = if i < k { 1 + i * (p - 1) } else { f };
        for w in first..=last {
            edges.push((f + i - 1, w - 1));
        }
    }
    let tree = Graph::from_edges(n, edges)?;
    debug_assert!(tree.is_tree());
    Ok((tree, VertexSet::from_vertices(n, 0..f), (f..n).collect()))
}
