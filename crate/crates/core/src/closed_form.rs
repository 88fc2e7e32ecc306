//! Closed-form spreading numbers, grid witnesses and the blue perimeter.

use alloc::format;
use alloc::vec::Vec;

use crate::family::{grid_id, FamilySpec};
use crate::solver::{sigma_exact, SigmaResult, SolveError};
use crate::{Error, Graph, Limit, SpreadParams, VertexSet};

/// A grid cell as `(col, row)`, both 1-based.
pub type Cell = (usize, usize);

/// Grids up to this many cells with no closed form are solved exactly.
const SMALL_GRID_CELLS: usize = 20;

/// `σ(p,q)` of a named family when a closed form is known.
pub fn sigma_closed_form(spec: &FamilySpec, params: SpreadParams) -> Result<SigmaResult, Error> {
    spec.validate()?;
    let p = params.p();
    let q = params.q();
    let n = spec.order();
    if let FamilySpec::Grid(m, rows) = *spec {
        return Ok(grid_sigma(params, m, rows));
    }
    if p > max_degree(spec) {
        return Ok(SigmaResult::formula(n));
    }
    let value = match *spec {
        FamilySpec::Path(_) => match p {
            1 => Some(1),
            2 => Some((n + 1).div_ceil(2)),
            _ => Some(n),
        },
        FamilySpec::Cycle(_) => match (p, q) {
            (1, Limit::Finite(1)) => Some(2),
            (1, _) => Some(1),
            (2, Limit::Finite(1)) => Some((n + 1).div_ceil(2)),
            (2, _) => Some(n.div_ceil(2)),
            _ => Some(n),
        },
        FamilySpec::Complete(_) => Some(match q {
            Limit::Finite(q) if p + q < n => n - q,
            _ => p,
        }),
        FamilySpec::CompleteBipartite(a, b) => {
            let (r, s) = (a.max(b), a.min(b));
            if s < p && p <= r {
                Some(match q {
                    Limit::Finite(q) if q < s => r + s - q,
                    _ => r,
                })
            } else {
                None
            }
        }
        FamilySpec::Star(_) => (p >= 2).then(|| n - 1),
        FamilySpec::Grid(..) | FamilySpec::CartesianProduct(..) => None,
    };
    Ok(value.map_or_else(SigmaResult::not_covered, SigmaResult::formula))
}

fn max_degree(spec: &FamilySpec) -> usize {
    match *spec {
        FamilySpec::Path(n) => n.saturating_sub(1).min(2),
        FamilySpec::Cycle(_) => 2,
        FamilySpec::Complete(n) | FamilySpec::Star(n) => n - 1,
        FamilySpec::CompleteBipartite(r, s) => r.max(s),
        FamilySpec::Grid(m, n) => {
            let axis = |k: usize| k.saturating_sub(1).min(2);
            axis(m) + axis(n)
        }
        FamilySpec::CartesianProduct(ref a, ref b) => max_degree(a) + max_degree(b),
    }
}

/// `σ(p,q)(P_m □ P_n)` for a grid with `m` columns and `n` rows.
///
/// `p = 3` is open. A `2 × k` grid under `(2,1)` has no closed form and is
/// solved exactly when small, otherwise reported as not covered.
pub fn grid_sigma(params: SpreadParams, m: usize, n: usize) -> SigmaResult {
    let (long, short) = (m.max(n), m.min(n));
    let p = params.p();
    if short == 0 {
        return SigmaResult::not_covered();
    }
    if p > max_degree(&FamilySpec::Grid(long, short)) {
        return SigmaResult::formula(m * n);
    }
    if short == 1 {
        return sigma_closed_form(&FamilySpec::Path(long), params).unwrap_or_else(|_| SigmaResult::not_covered());
    }
    match (p, params.q()) {
        (1, Limit::Finite(1)) => SigmaResult::formula(short),
        (1, _) => SigmaResult::formula(1),
        (2, Limit::Finite(1)) if short >= 3 => SigmaResult::formula((short + long + 1).div_ceil(2)),
        (2, Limit::Finite(1)) => small_grid_exact(params, m, n),
        (2, _) => SigmaResult::formula((short + long).div_ceil(2)),
        (3, _) => SigmaResult::open(),
        (4, _) => SigmaResult::formula(2 * long + 2 * short - 4 + (long - 2) * (short - 2) / 2),
        _ => SigmaResult::formula(m * n),
    }
}

fn small_grid_exact(params: SpreadParams, m: usize, n: usize) -> SigmaResult {
    if m * n > SMALL_GRID_CELLS {
        return SigmaResult::not_covered();
    }
    let graph = FamilySpec::Grid(m, n).build().expect("positive grid dimensions");
    sigma_exact(&graph, params, None).unwrap_or_else(|_| SigmaResult::not_covered())
}

/// The explicit minimum spreading set of the grid constructions, in
/// `(col, row)` coordinates of the `m × n` grid.
///
/// Covered rows: `(1,1)`, `(1,q ≥ 2)`, `(2,1)` with both sides at least 3,
/// `(2,q ≥ 2)`, `(4,q)` with both sides at least 3, and `p ≥ 5`.
pub fn grid_witness(params: SpreadParams, m: usize, n: usize) -> Result<Vec<Cell>, Error> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("grid sides must be at least 1".into()));
    }
    let short = m.min(n);
    if params.p() > max_degree(&FamilySpec::Grid(m, n)) {
        return Ok(all_cells(m, n));
    }
    let cells = match (params.p(), params.q()) {
        (1, Limit::Finite(1)) if n <= m => (1..=n).map(|row| (1, row)).collect(),
        (1, Limit::Finite(1)) => (1..=m).map(|col| (col, 1)).collect(),
        (1, _) => alloc::vec![(1, 1)],
        (2, Limit::Finite(1)) if short >= 3 => two_one_witness(m, n),
        (2, Limit::Finite(1)) => {
            return Err(Error::NotCovered(format!("no (2,1) construction for a {m} x {n} grid")))
        }
        (2, _) => {
            if n <= m {
                diagonal_witness(m, n)
            } else {
                transpose(diagonal_witness(n, m))
            }
        }
        (3, _) => return Err(Error::Open("sigma(3,q) of grids is open".into())),
        (4, _) => boundary_cover_witness(m, n),
        _ => all_cells(m, n),
    };
    Ok(sorted(cells))
}

/// [`grid_witness`] as a vertex set of `FamilySpec::Grid(m, n)`.
pub fn grid_witness_set(params: SpreadParams, m: usize, n: usize) -> Result<VertexSet, Error> {
    let cells = grid_witness(params, m, n)?;
    Ok(VertexSet::from_vertices(m * n, cells.into_iter().map(|(col, row)| grid_id(n, col, row))))
}

fn sorted(mut cells: Vec<Cell>) -> Vec<Cell> {
    cells.sort_unstable();
    cells.dedup();
    cells
}

fn transpose(cells: Vec<Cell>) -> Vec<Cell> {
    cells.into_iter().map(|(c, r)| (r, c)).collect()
}

fn all_cells(m: usize, n: usize) -> Vec<Cell> {
    (1..=m).flat_map(|c| (1..=n).map(move |r| (c, r))).collect()
}

/// Diagonal of the leading `n × n` square, then every other bottom cell and
/// the last column. Needs `n ≤ m`.
fn diagonal_witness(m: usize, n: usize) -> Vec<Cell> {
    let mut cells: Vec<Cell> = (1..=n).map(|i| (i, i)).collect();
    cells.extend((n + 2..m).step_by(2).map(|col| (col, n)));
    if m > n {
        cells.push((m, n));
    }
    cells
}

fn two_one_witness(m: usize, n: usize) -> Vec<Cell> {
    if (m + n) % 2 == 1 && m % 2 == 1 {
        return transpose(two_one_witness(n, m));
    }
    let mut cells = alloc::vec![(1, 1)];
    let last_even = if m % 2 == 1 { m - 1 } else { m };
    cells.extend((2..=last_even).step_by(2).map(|col| (col, 1)));
    let last_odd_row = if n % 2 == 1 { n } else { n - 1 };
    cells.extend((3..=last_odd_row).step_by(2).map(|row| (1, row)));
    match (m % 2, n % 2) {
        (1, 1) => cells.push((m, 1)),
        (0, 0) => cells.push((1, n)),
        _ => {}
    }
    cells
}

/// Boundary plus the odd color class of the interior.
fn boundary_cover_witness(m: usize, n: usize) -> Vec<Cell> {
    all_cells(m, n)
        .into_iter()
        .filter(|&(c, r)| c == 1 || c == m || r == 1 || r == n || (c + r) % 2 == 1)
        .collect()
}

/// Total perimeter of the union of unit squares at `cells`:
/// `4 |S| - 2 · #{adjacent pairs in S}`.
pub fn blue_perimeter(m: usize, n: usize, cells: &[Cell]) -> Result<usize, Error> {
    let mut grid = alloc::vec![false; m * n];
    for &(c, r) in cells {
        if c == 0 || r == 0 || c > m || r > n {
            return Err(Error::InvalidParameter(format!("cell ({c},{r}) outside the {m} x {n} grid")));
        }
        grid[grid_id(n, c, r)] = true;
    }
    let blue = |c: usize, r: usize| grid[grid_id(n, c, r)];
    let mut count = 0;
    let mut pairs = 0;
    for c in 1..=m {
        for r in 1..=n {
            if blue(c, r) {
                count += 1;
                pairs += usize::from(c < m && blue(c + 1, r)) + usize::from(r < n && blue(c, r + 1));
            }
        }
    }
    Ok(4 * count - 2 * pairs)
}

/// [`blue_perimeter`] of a vertex set of `FamilySpec::Grid(m, n)`.
pub fn blue_perimeter_of_set(m: usize, n: usize, set: &VertexSet) -> Result<usize, Error> {
    let cells: Vec<Cell> = set.iter().map(|id| crate::family::grid_cell(n, id)).collect();
    blue_perimeter(m, n, &cells)
}

/// Exact `σ(3,3)` and `σ(3,4)` on a small grid. A value is `None` when the
/// budget ran out; `equal` is only decided when both are known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureProbe {
    pub m: usize,
    pub n: usize,
    pub sigma_33: Option<usize>,
    pub sigma_34: Option<usize>,
    pub equal: Option<bool>,
    /// `(lower, upper)` for each value left undecided.
    pub bounds_33: Option<(usize, usize)>,
    pub bounds_34: Option<(usize, usize)>,
}

pub fn conjecture_probe(m: usize, n: usize, budget: Option<u64>) -> Result<ConjectureProbe, Error> {
    let graph = FamilySpec::Grid(m, n).build()?;
    type Outcome = (Option<usize>, Option<(usize, usize)>);
    let run = |q: usize| -> Result<Outcome, Error> {
        match sigma_exact(&graph, SpreadParams::finite(3, q), budget) {
            Ok(r) => Ok((r.value, None)),
            Err(SolveError::BudgetExhausted { lower, upper, .. }) => Ok((None, Some((lower, upper)))),
            Err(SolveError::TooLarge(k)) => Err(Error::TooLarge(format!("grid with {k} cells"))),
            Err(SolveError::Invalid(e)) => Err(e),
        }
    };
    let (sigma_33, bounds_33) = run(3)?;
    let (sigma_34, bounds_34) = run(4)?;
    let equal = match (sigma_33, sigma_34) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    Ok(ConjectureProbe { m, n, sigma_33, sigma_34, equal, bounds_33, bounds_34 })
}

/// Graph of the grid, for callers that only hold dimensions.
pub fn grid_graph(m: usize, n: usize) -> Result<Graph, Error> {
    FamilySpec::Grid(m, n).build()
}
