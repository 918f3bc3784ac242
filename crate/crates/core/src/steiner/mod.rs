//! Exact solver for general graphs: red-avoiding Steiner trees over all red
//! subsets, then a greedy blue extension of each candidate tree.

mod convolution;
mod exact;
mod tables;

use std::time::Instant;

use thiserror::Error;

pub use convolution::{fast_minsum_convolution, ConvolutionError, MAX_GROUND_SET};
pub use exact::{greedy_blue_extension, solve_exact_bcs, solve_exact_bcs_with};
pub use tables::{red_avoiding_distances, steiner_excluding_fast, steiner_excluding_naive, SteinerTables, SteinerTree};

use crate::exec::Exec;
use crate::graph::{BicoloredGraph, Color};

/// Marker for an absent value in Steiner and convolution tables.
pub const INFINITY: u32 = u32::MAX;

/// Default cap on the number of red vertices (after the color swap).
pub const DEFAULT_MAX_RED: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteinerError {
    #[error("{reds} red vertices exceed the configured limit of {limit}")]
    TooManyReds { reds: usize, limit: usize },
    #[error("deadline passed before the tables were complete")]
    Timeout,
    #[error("no tree exists for this entry")]
    Infeasible,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Enumerate every split of every red subset.
    Naive,
    /// Ranked min-sum subset convolution per level.
    #[default]
    Fast,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactConfig {
    pub strategy: Strategy,
    pub max_red: usize,
    pub exec: Exec,
    pub deadline: Option<Instant>,
}

impl Default for ExactConfig {
    fn default() -> Self {
        Self {
            strategy: Strategy::default(),
            max_red: DEFAULT_MAX_RED,
            exec: Exec::default(),
            deadline: None,
        }
    }
}

/// Bijection between red vertices and bit positions, in increasing vertex
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedIndex {
    reds: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl RedIndex {
    pub fn new(g: &BicoloredGraph) -> Self {
        let reds = g.vertices_of(Color::Red);
        let mut position = vec![None; g.len()];
        for (i, &r) in reds.iter().enumerate() {
            position[r] = Some(i);
        }
        Self { reds, position }
    }

    pub fn len(&self) -> usize {
        self.reds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reds.is_empty()
    }

    /// Bit position of `v`, or `None` when `v` is not red.
    pub fn index(&self, v: usize) -> Option<usize> {
        self.position[v]
    }

    pub fn vertex(&self, bit: usize) -> usize {
        self.reds[bit]
    }

    /// Mask of the given red vertices; panics on non-red input.
    pub fn mask(&self, vertices: &[usize]) -> usize {
        vertices
            .iter()
            .fold(0, |m, &v| m | 1 << self.position[v].expect("red vertex"))
    }

    pub fn vertices(&self, mut mask: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(mask.count_ones() as usize);
        while mask != 0 {
            out.push(self.reds[mask.trailing_zeros() as usize]);
            mask &= mask - 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn red_index_round_trip() {
        let g = BicoloredGraph::unweighted(vec![Color::Blue, Color::Red, Color::Blue, Color::Red], []).unwrap();
        let idx = RedIndex::new(&g);
        assert_eq!(idx.len(), 2);
        for m in 0..4 {
            assert_eq!(idx.mask(&idx.vertices(m)), m);
        }
        assert_eq!(idx.index(2), None);
        assert_eq!(idx.vertex(1), 3);
    }
}
