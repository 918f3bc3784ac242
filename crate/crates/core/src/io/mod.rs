//! Instance files, structural certificates, generators and hardness encoders.

pub mod decomposition;
pub mod format;
pub mod generate;
pub mod intervals;
pub mod reduction;

pub use decomposition::{validate_tree_decomposition, DecompositionError, TreeDecomposition};
pub use format::{
    parse_instance, parse_solution, write_instance, write_solution, Instance, ParseError, ParseErrorKind, Problem,
};
pub use generate::{gen_random, Family, GenConfig, GenError};
pub use intervals::{normalize_intervals, Interval, IntervalError, IntervalRepresentation};
pub use reduction::{encode_subset_sum_star, encode_x3c_bipartite, encode_x3c_split, Encoded, ReductionError};
