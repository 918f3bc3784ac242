//! Exact solvers for the maximum balanced connected subgraph problem: given a
//! graph whose vertices are blue or red, find a largest connected vertex set
//! with as many blue as red vertices (or equal blue and red weight).
//!
//! Structured inputs have dedicated polynomial solvers ([`tree`], [`interval`],
//! [`treewidth`]); arbitrary graphs go through [`steiner`], and [`oracle`]
//! holds exhaustive references used for testing.

pub mod crosscheck;
pub mod exec;
pub mod graph;
pub mod interval;
pub mod io;
pub mod oracle;
pub mod scaling;
pub mod solve;
pub mod steiner;
pub mod tree;
pub mod treewidth;

pub use exec::Exec;
pub use graph::{is_valid_witness, validate_witness, BicoloredGraph, Color, Measure, SolveResult, WitnessError};
pub use solve::{solve, Algorithm, SolveError, SolveOptions};
