//! Reduction graphs: `G*` carries zero forcing to `q`-forcing and `G′`
//! carries `q`-forcing to `(p,q)`-spreading.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::engine::is_spreading_set;
use crate::solver::{enumerate_minimum_sets, ExactSolver, SolveError};
use crate::{Error, Graph, SpreadParams, VertexSet};

/// Role of a gadget vertex. Owner and position indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GadgetRole {
    Original(usize),
    A(usize, usize),
    B(usize, usize),
    C(usize, usize),
    Universal(usize),
    Leaf(usize, usize),
}

impl fmt::Display for GadgetRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GadgetRole::Original(i) => write!(f, "v{i}"),
            GadgetRole::A(i, j) => write!(f, "a{i}_{j}"),
            GadgetRole::B(i, j) => write!(f, "b{i}_{j}"),
            GadgetRole::C(i, j) => write!(f, "c{i}_{j}"),
            GadgetRole::Universal(i) => write!(f, "u{i}"),
            GadgetRole::Leaf(i, j) => write!(f, "leaf{i}_{j}"),
        }
    }
}

impl FromStr for GadgetRole {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidParameter(format!("not a gadget label: {s:?}"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let pair = |t: &str| -> Result<(usize, usize), Error> {
            let (i, j) = t.split_once('_').ok_or_else(bad)?;
            Ok((num(i)?, num(j)?))
        };
        if let Some(rest) = s.strip_prefix("leaf") {
            let (i, j) = pair(rest)?;
            return Ok(GadgetRole::Leaf(i, j));
        }
        let (head, rest) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        match head {
            "v" => Ok(GadgetRole::Original(num(rest)?)),
            "u" => Ok(GadgetRole::Universal(num(rest)?)),
            "a" => pair(rest).map(|(i, j)| GadgetRole::A(i, j)),
            "b" => pair(rest).map(|(i, j)| GadgetRole::B(i, j)),
            "c" => pair(rest).map(|(i, j)| GadgetRole::C(i, j)),
            _ => Err(bad()),
        }
    }
}

/// Role of vertex `v` according to its label, if it has one.
pub fn role_of(graph: &Graph, v: usize) -> Option<GadgetRole> {
    graph.label(v)?.parse().ok()
}

fn labelled(graph: Graph, roles: impl IntoIterator<Item = (usize, GadgetRole)>) -> Result<Graph, Error> {
    let labels: BTreeMap<usize, String> = roles.into_iter().map(|(v, r)| (v, r.to_string())).collect();
    graph.with_labels(labels)
}

/// `G*`: every vertex `v_i` gets `a^i_1..a^i_{q-1}` (all joined to `v_i`),
/// `b^i_1..b^i_q` and `c^i_1..c^i_q`, with cliques on `A^i ∪ B^i` and
/// `B^i ∪ C^i`. Original vertices keep their ids; the block of owner `i`
/// (0-based) starts at `n + i (3q - 1)` in the order a, b, c.
pub fn build_gstar(graph: &Graph, q: usize) -> Result<Graph, Error> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("G* needs q >= 2, got {q}")));
    }
    let n = graph.order();
    let block = 3 * q - 1;
    let total = n + n * block;
    let mut edges: Vec<(usize, usize)> = graph.edges().collect();
    let mut roles: Vec<(usize, GadgetRole)> = (0..n).map(|v| (v, GadgetRole::Original(v + 1))).collect();
    for i in 0..n {
        let base = n + i * block;
        let a: Vec<usize> = (base..base + q - 1).collect();
        let b: Vec<usize> = (base + q - 1..base + 2 * q - 1).collect();
        let c: Vec<usize> = (base + 2 * q - 1..base + block).collect();
        edges.extend(a.iter().map(|&x| (i, x)));
        clique(&mut edges, a.iter().chain(&b).copied());
        clique(&mut edges, b.iter().chain(&c).copied());
        let owner = i + 1;
        roles.extend(a.iter().enumerate().map(|(j, &x)| (x, GadgetRole::A(owner, j + 1))));
        roles.extend(b.iter().enumerate().map(|(j, &x)| (x, GadgetRole::B(owner, j + 1))));
        roles.extend(c.iter().enumerate().map(|(j, &x)| (x, GadgetRole::C(owner, j + 1))));
    }
    labelled(Graph::from_edges(total, edges)?, roles)
}

fn clique(edges: &mut Vec<(usize, usize)>, members: impl Iterator<Item = usize>) {
    let members: Vec<usize> = members.collect();
    for (k, &u) in members.iter().enumerate() {
        edges.extend(members[k + 1..].iter().map(|&v| (u, v)));
    }
}

/// `G′`: `p - 1` vertices joined to all of `G`, each with `p` private leaves.
/// `u_i` (0-based `i`) has id `n + i`; its leaf `j` has id
/// `n + (p - 1) + i p + j`.
pub fn build_gprime(graph: &Graph, p: usize) -> Result<Graph, Error> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!("G' needs p >= 2, got {p}")));
    }
    let n = graph.order();
    let universal = p - 1;
    let total = n + universal + universal * p;
    let mut edges: Vec<(usize, usize)> = graph.edges().collect();
    let mut roles: Vec<(usize, GadgetRole)> = (0..n).map(|v| (v, GadgetRole::Original(v + 1))).collect();
    for i in 0..universal {
        let u = n + i;
        roles.push((u, GadgetRole::Universal(i + 1)));
        edges.extend((0..n).map(|v| (v, u)));
        for j in 0..p {
            let leaf = n + universal + i * p + j;
            edges.push((u, leaf));
            roles.push((leaf, GadgetRole::Leaf(i + 1, j + 1)));
        }
    }
    labelled(Graph::from_edges(total, edges)?, roles)
}

/// Ids of the leaves of `G′`.
pub fn gprime_leaves(base_order: usize, p: usize) -> core::ops::Range<usize> {
    let start = base_order + p - 1;
    start..start + (p - 1) * p
}

/// A value certified by exact search, or bounds if the budget ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certified {
    Value(usize),
    Bounds { lower: usize, upper: usize },
}

impl Certified {
    pub fn value(self) -> Option<usize> {
        match self {
            Certified::Value(v) => Some(v),
            Certified::Bounds { .. } => None,
        }
    }
}

fn certify(result: Result<crate::SigmaResult, SolveError>) -> Result<Certified, Error> {
    match result {
        Ok(r) => Ok(Certified::Value(r.value.expect("exact value"))),
        Err(SolveError::BudgetExhausted { lower, upper, .. }) => Ok(Certified::Bounds { lower, upper }),
        Err(SolveError::TooLarge(k)) => Err(Error::TooLarge(format!("component with {k} vertices"))),
        Err(SolveError::Invalid(e)) => Err(e),
    }
}

/// Maximum number of minimum sets checked for the lift.
const LIFT_SAMPLE: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GstarCertificate {
    /// `Z(G)`.
    pub zg: Certified,
    /// `F_q(G*)`.
    pub fq_gstar: Certified,
    pub equal: Option<bool>,
    /// Every checked minimum zero forcing set of `G` is a `q`-forcing set of `G*`.
    pub lift_valid: bool,
    pub lifts_checked: usize,
}

/// Compares `Z(G)` with `F_q(G*)`. The search on `G*` is capped by the lift
/// of a minimum zero forcing set, so only sizes below `Z(G)` are refuted.
pub fn certify_gstar(graph: &Graph, q: usize, budget: Option<u64>) -> Result<GstarCertificate, Error> {
    let gstar = build_gstar(graph, q)?;
    let zero = SpreadParams::finite(1, 1);
    let forcing = SpreadParams::finite(1, q);
    let zg = certify(ExactSolver::new(graph, zero).budget(budget).solve())?;
    let (lift_valid, lifts_checked, hint) = match zg {
        Certified::Value(_) => {
            let sets = enumerate_minimum_sets(graph, zero, LIFT_SAMPLE).map_err(solve_error)?;
            let lifted: Vec<VertexSet> = sets.iter().map(|s| embed(s, gstar.order())).collect();
            let ok = lifted.iter().all(|s| is_spreading_set(&gstar, forcing, s));
            (ok, lifted.len(), lifted.into_iter().next())
        }
        Certified::Bounds { .. } => (false, 0, None),
    };
    let mut solver = ExactSolver::new(&gstar, forcing).budget(budget);
    if let Some(h) = hint.filter(|_| lift_valid) {
        solver = solver.upper_hint(h);
    }
    let fq_gstar = certify(solver.solve())?;
    Ok(GstarCertificate { zg, fq_gstar, equal: equal(zg, fq_gstar), lift_valid, lifts_checked })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GprimeCertificate {
    /// `F_q(G)`.
    pub fq: Certified,
    /// `σ(p,q)(G′)`.
    pub sigma_gprime: Certified,
    /// `p (p - 1)`.
    pub offset: usize,
    /// `σ(p,q)(G′) = F_q(G) + p (p - 1)`.
    pub equal: Option<bool>,
    /// `S ∪ L` spreads in `G′` for every checked minimum `q`-forcing set `S`.
    pub lift_valid: bool,
    pub lifts_checked: usize,
}

pub fn certify_gprime(graph: &Graph, p: usize, q: usize, budget: Option<u64>) -> Result<GprimeCertificate, Error> {
    let gprime = build_gprime(graph, p)?;
    let forcing = SpreadParams::finite(1, q);
    let spreading = SpreadParams::finite(p, q);
    let offset = p * (p - 1);
    let fq = certify(ExactSolver::new(graph, forcing).budget(budget).solve())?;
    let (lift_valid, lifts_checked, hint) = match fq {
        Certified::Value(_) => {
            let sets = enumerate_minimum_sets(graph, forcing, LIFT_SAMPLE).map_err(solve_error)?;
            let lifted: Vec<VertexSet> = sets
                .iter()
                .map(|s| {
                    let mut lift = embed(s, gprime.order());
                    for leaf in gprime_leaves(graph.order(), p) {
                        lift.insert(leaf);
                    }
                    lift
                })
                .collect();
            let ok = lifted.iter().all(|s| is_spreading_set(&gprime, spreading, s));
            (ok, lifted.len(), lifted.into_iter().next())
        }
        Certified::Bounds { .. } => (false, 0, None),
    };
    let mut solver = ExactSolver::new(&gprime, spreading).budget(budget);
    if let Some(h) = hint.filter(|_| lift_valid) {
        solver = solver.upper_hint(h);
    }
    let sigma_gprime = certify(solver.solve())?;
    let equal = match (fq, sigma_gprime) {
        (Certified::Value(a), Certified::Value(b)) => Some(a + offset == b),
        _ => None,
    };
    Ok(GprimeCertificate { fq, sigma_gprime, offset, equal, lift_valid, lifts_checked })
}

fn equal(a: Certified, b: Certified) -> Option<bool> {
    Some(a.value()? == b.value()?)
}

fn solve_error(e: SolveError) -> Error {
    match e {
        SolveError::Invalid(e) => e,
        other => Error::TooLarge(other.to_string()),
    }
}

fn embed(set: &VertexSet, universe: usize) -> VertexSet {
    VertexSet::from_vertices(universe, set.iter())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;

    fn family(spec: FamilySpec) -> Graph {
        spec.build().unwrap()
    }

    fn induces_clique(g: &Graph, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(k, &u)| vs[k + 1..].iter().all(|&v| g.has_edge(u, v)))
    }

    #[test]
    fn gstar_sizes_and_cliques() {
        let g = build_gstar(&family(FamilySpec::Path(3)), 2).unwrap();
        assert_eq!(g.order(), 18);
        for owner in 1..=3 {
            let find = |r: GadgetRole| g.find_label(&r.to_string()).unwrap();
            let a = [find(GadgetRole::A(owner, 1))];
            let b = [find(GadgetRole::B(owner, 1)), find(GadgetRole::B(owner, 2))];
            let c = [find(GadgetRole::C(owner, 1)), find(GadgetRole::C(owner, 2))];
            assert!(induces_clique(&g, &[a[0], b[0], b[1]]));
            assert!(induces_clique(&g, &[b[0], b[1], c[0], c[1]]));
            assert!(!g.has_edge(a[0], c[0]));
            assert!(g.has_edge(owner - 1, a[0]));
        }
        assert_eq!(build_gstar(&Graph::empty(1), 2).unwrap().order(), 6);
        assert_eq!(build_gstar(&family(FamilySpec::Cycle(4)), 3).unwrap().order(), 36);
        assert!(build_gstar(&Graph::empty(1), 1).is_err());
    }

    #[test]
    fn gprime_sizes() {
        let g = build_gprime(&family(FamilySpec::Path(3)), 2).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.degree(3), 5);
        assert_eq!(build_gprime(&Graph::empty(1), 2).unwrap().order(), 4);
        let g = build_gprime(&family(FamilySpec::Cycle(4)), 3).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!((g.degree(4), g.degree(5)), (7, 7));
        assert_eq!(role_of(&g, 11), Some(GadgetRole::Leaf(2, 3)));
        assert!(gprime_leaves(4, 3).all(|v| g.degree(v) == 1));
    }

    #[test]
    fn labels_round_trip() {
        for role in [
            GadgetRole::Original(3),
            GadgetRole::A(3, 1),
            GadgetRole::B(12, 2),
            GadgetRole::C(1, 10),
            GadgetRole::Universal(2),
            GadgetRole::Leaf(1, 2),
        ] {
            assert_eq!(role.to_string().parse::<GadgetRole>(), Ok(role));
        }
        assert!("x1".parse::<GadgetRole>().is_err());
        assert!("a1".parse::<GadgetRole>().is_err());
    }

    #[test]
    fn gstar_certificates() {
        for (spec, z) in [(FamilySpec::Path(3), 1), (FamilySpec::Complete(3), 2), (FamilySpec::Star(4), 2)] {
            let c = certify_gstar(&family(spec), 2, None).unwrap();
            assert_eq!((c.zg, c.fq_gstar, c.equal), (Certified::Value(z), Certified::Value(z), Some(true)));
            assert!(c.lift_valid);
        }
    }

    #[test]
    fn gprime_certificates() {
        let c = certify_gprime(&family(FamilySpec::Path(3)), 2, 1, None).unwrap();
        assert_eq!((c.fq, c.sigma_gprime), (Certified::Value(1), Certified::Value(3)));
        let c = certify_gprime(&family(FamilySpec::Cycle(4)), 2, 1, None).unwrap();
        assert_eq!((c.fq, c.sigma_gprime), (Certified::Value(2), Certified::Value(4)));
        let c = certify_gprime(&family(FamilySpec::Path(4)), 3, 2, None).unwrap();
        assert_eq!((c.fq, c.sigma_gprime, c.equal), (Certified::Value(1), Certified::Value(7), Some(true)));
        assert!(c.lift_valid);
    }
}
