//! Named graph families.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use crate::{Error, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// `K_{r,s}`: ids `0..r` on one side, `r..r+s` on the other.
    CompleteBipartite(usize, usize),
    /// `K_{1,n-1}` with the center at id 0.
    Star(usize),
    /// `P_m □ P_n`: `m` columns and `n` rows, see [`grid_id`].
    Grid(usize, usize),
    CartesianProduct(Box<FamilySpec>, Box<FamilySpec>),
}

/// Vertex id of the 1-based cell `(col, row)` in a grid with `rows` rows.
#[inline]
pub fn grid_id(rows: usize, col: usize, row: usize) -> usize {
    (col - 1) * rows + (row - 1)
}

/// Inverse of [`grid_id`].
#[inline]
pub fn grid_cell(rows: usize, id: usize) -> (usize, usize) {
    (id / rows + 1, id % rows + 1)
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), Error> {
        let positive = |name: &str, xs: &[usize]| {
            if xs.contains(&0) {
                Err(Error::InvalidParameter(format!("{name}: size parameters must be at least 1")))
            } else {
                Ok(())
            }
        };
        match self {
            FamilySpec::Path(n) => positive("path", &[*n]),
            FamilySpec::Cycle(n) if *n < 3 => Err(Error::InvalidParameter(format!(
                "cycle: a simple cycle needs at least 3 vertices, got {n}"
            ))),
            FamilySpec::Cycle(_) => Ok(()),
            FamilySpec::Complete(n) => positive("complete", &[*n]),
            FamilySpec::CompleteBipartite(r, s) => positive("complete_bipartite", &[*r, *s]),
            FamilySpec::Star(n) => positive("star", &[*n]),
            FamilySpec::Grid(m, n) => positive("grid", &[*m, *n]),
            FamilySpec::CartesianProduct(a, b) => {
                a.validate()?;
                b.validate()
            }
        }
    }

    pub fn build(&self) -> Result<Graph, Error> {
        self.validate()?;
        let graph = match *self {
            FamilySpec::Path(n) => Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?,
            FamilySpec::Cycle(n) => Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?,
            FamilySpec::Complete(n) => {
                Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))?
            }
            FamilySpec::CompleteBipartite(r, s) => {
                Graph::from_edges(r + s, (0..r).flat_map(|u| (r..r + s).map(move |v| (u, v))))?
            }
            FamilySpec::Star(n) => Graph::from_edges(n, (1..n).map(|v| (0, v)))?,
            FamilySpec::Grid(m, n) => {
                let mut edges = Vec::new();
                for col in 1..=m {
                    for row in 1..=n {
                        let here = grid_id(n, col, row);
                        if col < m {
                            edges.push((here, grid_id(n, col + 1, row)));
                        }
                        if row < n {
                            edges.push((here, grid_id(n, col, row + 1)));
                        }
                    }
                }
                Graph::from_edges(m * n, edges)?
            }
            FamilySpec::CartesianProduct(ref a, ref b) => a.build()?.cartesian_product(&b.build()?),
        };
        Ok(graph)
    }

    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Path(n) | FamilySpec::Cycle(n) | FamilySpec::Complete(n) | FamilySpec::Star(n) => n,
            FamilySpec::CompleteBipartite(r, s) => r + s,
            FamilySpec::Grid(m, n) => m * n,
            FamilySpec::CartesianProduct(ref a, ref b) => a.order() * b.order(),
        }
    }
}

pub fn build_family(spec: &FamilySpec) -> Result<Graph, Error> {
    spec.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_has_center_zero() {
        let g = FamilySpec::Star(5).build().unwrap();
        assert_eq!(g.degree(0), 4);
        assert!((1..5).all(|v| g.degree(v) == 1));
        assert!(g.is_tree());
    }

    #[test]
    fn grid_three_by_three() {
        let g = FamilySpec::Grid(3, 3).build().unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.degree(grid_id(3, 2, 2)), 4);
        assert_eq!(g.degree(grid_id(3, 1, 1)), 2);
        assert!(g.has_edge(grid_id(3, 1, 1), grid_id(3, 2, 1)));
    }

    #[test]
    fn product_of_two_edges_is_a_four_cycle() {
        let spec = FamilySpec::CartesianProduct(Box::new(FamilySpec::Path(2)), Box::new(FamilySpec::Path(2)));
        let g = spec.build().unwrap();
        assert!(g.is_connected());
        assert_eq!((g.order(), g.edge_count()), (4, 4));
        assert!((0..4).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn grid_equals_product_of_paths() {
        let grid = FamilySpec::Grid(4, 3).build().unwrap();
        let product = FamilySpec::CartesianProduct(Box::new(FamilySpec::Path(4)), Box::new(FamilySpec::Path(3)))
            .build()
            .unwrap();
        assert_eq!(grid, product);
    }

    #[test]
    fn zero_sizes_rejected() {
        assert!(FamilySpec::Path(0).build().is_err());
        assert!(FamilySpec::Cycle(2).build().is_err());
        assert!(FamilySpec::Grid(3, 0).build().is_err());
        assert!(FamilySpec::CompleteBipartite(0, 2).build().is_err());
    }

    #[test]
    fn cell_round_trip() {
        for id in 0..20 {
            let (col, row) = grid_cell(4, id);
            assert_eq!(grid_id(4, col, row), id);
        }
    }
}
