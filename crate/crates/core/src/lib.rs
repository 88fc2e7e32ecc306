//! Spreading processes on graphs.
//!
//! A white vertex turns blue when it has at least `p` blue neighbors and one of
//! those blue neighbors has at most `q` white neighbors. With `p = 1` this is
//! `q`-forcing (zero forcing for `q = 1`); with `q = ∞` it is `p`-neighbor
//! bootstrap percolation.
//!
//! The crate is `no_std` and only needs `alloc`. Text formats, JSON and the
//! command-line front end live in the `spread` crate.

#![no_std]

extern crate alloc;

pub mod closed_form;
pub mod engine;
mod error;
pub mod family;
pub mod gadgets;
pub mod graph;
mod mask;
mod params;
pub mod solver;
pub mod tree;
mod vertex_set;

pub use error::Error;
pub use graph::{Graph, StructureReport};
pub use params::{Limit, SpreadParams};
pub use vertex_set::VertexSet;

pub use engine::{closure, is_spreading_set, SpreadTrace, Step};
pub use family::FamilySpec;
pub use solver::{SigmaResult, SolveError, Status};

pub type Result<T, E = Error> = core::result::Result<T, E>;
