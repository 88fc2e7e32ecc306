//! Edge-list files, JSON output, seeded randomness, parallel exact search and
//! the `spread` command-line tool on top of [`spread_core`].

pub mod cli;
pub mod corpus;
pub mod edgelist;
pub mod json;
pub mod parallel;
pub mod scheduler;

pub use cli::{run, Outcome};
pub use parallel::Parallel;
pub use scheduler::RandomScheduler;
