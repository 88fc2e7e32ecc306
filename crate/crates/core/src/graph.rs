//! Undirected simple graphs on dense vertex ids `0..n`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, VertexSet};

/// Simple undirected graph with sorted adjacency lists and optional vertex labels.
///
/// Immutable once built; share it freely between workers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    labels: BTreeMap<usize, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub max_degree: usize,
    pub min_degree: usize,
    pub is_connected: bool,
    pub is_tree: bool,
    pub components: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: alloc::vec![Vec::new(); n],
            edge_count: 0,
            labels: BTreeMap::new(),
        }
    }

    /// Builds a graph on `0..n`. Duplicate edges collapse; self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = alloc::vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Graph {
            adj,
            edge_count: edge_count / 2,
            labels: BTreeMap::new(),
        })
    }

    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Result<Self, Error> {
        if let Some((&v, _)) = labels.iter().find(|(&v, _)| v >= self.order()) {
            return Err(Error::VertexOutOfRange { vertex: v, order: self.order() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    /// Vertices carrying exactly this label.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().find(|(_, l)| l.as_str() == label).map(|(&v, _)| v)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.order() >= 1 && self.edge_count + 1 == self.order() && self.is_connected()
    }

    pub fn structure_report(&self) -> StructureReport {
        let components = self.components();
        let is_connected = components.len() <= 1;
        StructureReport {
            max_degree: self.max_degree(),
            min_degree: self.min_degree(),
            is_connected,
            is_tree: is_connected && self.order() >= 1 && self.edge_count + 1 == self.order(),
            components,
        }
    }

    /// Subgraph induced by `vertices` (sorted, distinct), relabelled to
    /// `0..vertices.len()` in the given order. Labels are carried over.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = alloc::vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = alloc::vec![Vec::new(); vertices.len()];
        let mut edge_count = 0;
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX {
                    adj[i].push(index[w]);
                    edge_count += 1;
                }
            }
            adj[i].sort_unstable();
        }
        let labels = vertices
            .iter()
            .enumerate()
            .filter_map(|(i, v)| self.labels.get(v).map(|l| (i, l.clone())))
            .collect();
        Graph {
            adj,
            edge_count: edge_count / 2,
            labels,
        }
    }

    /// Number of edges with both ends in `set`.
    pub fn edges_within(&self, set: &VertexSet) -> usize {
        set.iter()
            .map(|u| self.adj[u].iter().filter(|&&w| w > u && set.contains(w)).count())
            .sum()
    }

    /// `|N_S(v)|`.
    pub fn neighbors_in(&self, v: usize, set: &VertexSet) -> usize {
        self.adj[v].iter().filter(|&&w| set.contains(w)).count()
    }

    /// Cartesian product: `(g, h)` gets id `g * |H| + h`.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let (n, m) = (self.order(), other.order());
        let id = |g: usize, h: usize| g * m + h;
        let mut edges = Vec::new();
        for g in 0..n {
            for (h, h2) in other.edges() {
                edges.push((id(g, h), id(g, h2)));
            }
        }
        for (g, g2) in self.edges() {
            for h in 0..m {
                edges.push((id(g, h), id(g2, h)));
            }
        }
        Graph::from_edges(n * m, edges).expect("product of simple graphs is simple")
    }
}
