//! Seeded random instance families.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::format::{Instance, Problem};
use super::intervals::{Interval, IntervalRepresentation};
use crate::graph::{BicoloredGraph, Color};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Tree,
    Path,
    Interval,
    General,
    Split,
    Bipartite,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Tree,
        Family::Path,
        Family::Interval,
        Family::General,
        Family::Split,
        Family::Bipartite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Tree => "tree",
            Family::Path => "path",
            Family::Interval => "interval",
            Family::General => "general",
            Family::Split => "split",
            Family::Bipartite => "bipartite",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GenError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("instances need at least one vertex")]
    Empty,
    #[error("blue ratio {0} is outside [0, 1]")]
    BadRatio(f64),
    #[error("max weight must be at least 1")]
    ZeroWeight,
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenConfig {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    /// Fraction of blue vertices; the count is rounded to the nearest integer.
    pub blue_ratio: f64,
    /// When set, weights are drawn uniformly from `1..=max_weight` and a
    /// `wbcs` instance is produced.
    pub max_weight: Option<u64>,
}

impl GenConfig {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        Self {
            family,
            n,
            seed,
            blue_ratio: 0.5,
            max_weight: None,
        }
    }

    pub fn with_ratio(mut self, blue_ratio: f64) -> Self {
        self.blue_ratio = blue_ratio;
        self
    }

    pub fn with_max_weight(mut self, max_weight: u64) -> Self {
        self.max_weight = Some(max_weight);
        self
    }
}

fn shuffled_colors(rng: &mut ChaCha8Rng, n: usize, blue_ratio: f64) -> Vec<Color> {
    let blues = ((n as f64) * blue_ratio).round() as usize;
    let mut colors: Vec<Color> = (0..n).map(|i| if i < blues { Color::Blue } else { Color::Red }).collect();
    colors.shuffle(rng);
    colors
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    (1..n).map(|i| (order[rng.gen_range(0..i)], order[i])).collect()
}

fn random_path(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order.windows(2).map(|w| (w[0], w[1])).collect()
}

fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn random_intervals(rng: &mut ChaCha8Rng, n: usize) -> IntervalRepresentation {
    let span = 2 * n as i64;
    let intervals = (0..n)
        .map(|_| {
            let left = rng.gen_range(0..span);
            let len = rng.gen_range(1..=n as i64);
            Interval::new(left, left + len)
        })
        .collect();
    IntervalRepresentation::new(intervals).expect("positive lengths").normalize()
}

fn split_edges(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let clique = rng.gen_range(1..=n);
    let (core, rest) = order.split_at(clique);
    let mut edges = Vec::new();
    for (i, &u) in core.iter().enumerate() {
        for &v in &core[i + 1..] {
            edges.push((u, v));
        }
    }
    for &v in rest {
        for &u in core {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn bipartite_edges(rng: &mut ChaCha8Rng, colors: &[Color]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..colors.len() {
        for v in u + 1..colors.len() {
            if colors[u] != colors[v] && rng.gen_bool(0.4) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Draws one instance. Identical configs give identical instances.
pub fn gen_random(config: &GenConfig) -> Result<Instance, GenError> {
    let n = config.n;
    if n == 0 {
        return Err(GenError::Empty);
    }
    if !(0.0..=1.0).contains(&config.blue_ratio) {
        return Err(GenError::BadRatio(config.blue_ratio));
    }
    if config.max_weight == Some(0) {
        return Err(GenError::ZeroWeight);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let colors = shuffled_colors(&mut rng, n, config.blue_ratio);
    let mut intervals = None;
    let edges = match config.family {
        Family::Tree => random_tree(&mut rng, n),
        Family::Path => random_path(&mut rng, n),
        Family::Interval => {
            let rep = random_intervals(&mut rng, n);
            let edges = rep.intersection_edges();
            intervals = Some(rep);
            edges
        }
        Family::General => {
            let p = rng.gen_range(0.15..0.5);
            gnp(&mut rng, n, p)
        }
        Family::Split => split_edges(&mut rng, n),
        Family::Bipartite => bipartite_edges(&mut rng, &colors),
    };
    let (problem, weights) = match config.max_weight {
        Some(w) => (Problem::Wbcs, Some((0..n).map(|_| rng.gen_range(1..=w)).collect())),
        None => (Problem::Bcs, None),
    };
    let graph = BicoloredGraph::new(colors, weights, edges).expect("generated graphs are simple");
    Ok(Instance {
        problem,
        graph,
        intervals,
        decomposition: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_tree() {
        let inst = gen_random(&GenConfig::new(Family::Tree, 1, 7)).unwrap();
        assert_eq!(inst.graph.len(), 1);
        assert_eq!(inst.graph.edge_count(), 0);
    }

    #[test]
    fn path_of_five() {
        let g = gen_random(&GenConfig::new(Family::Path, 5, 3)).unwrap().graph;
        assert_eq!(g.edge_count(), 4);
        assert!((0..5).all(|v| g.degree(v) <= 2));
        assert!(g.path_order().is_some());
    }

    #[test]
    fn deterministic_in_seed() {
        for family in Family::ALL {
            let cfg = GenConfig::new(family, 9, 42).with_max_weight(5);
            assert_eq!(gen_random(&cfg).unwrap(), gen_random(&cfg).unwrap());
        }
    }

    #[test]
    fn structural_guarantees() {
        for seed in 0..30 {
            let tree = gen_random(&GenConfig::new(Family::Tree, 12, seed)).unwrap().graph;
            assert!(tree.is_tree());
            let inst = gen_random(&GenConfig::new(Family::Interval, 12, seed)).unwrap();
            let rep = inst.intervals.as_ref().unwrap();
            assert!(rep.is_normalized());
            assert_eq!(rep.check_represents(&inst.graph), Ok(()));
            let bip = gen_random(&GenConfig::new(Family::Bipartite, 12, seed)).unwrap().graph;
            assert!(bip.edges().iter().all(|&(u, v)| bip.color(u) != bip.color(v)));
        }
    }

    #[test]
    fn ratio_sets_the_blue_count() {
        let g = gen_random(&GenConfig::new(Family::General, 10, 1).with_ratio(0.3)).unwrap().graph;
        assert_eq!(g.count_color(Color::Blue), 3);
        assert_eq!(gen_random(&GenConfig::new(Family::Tree, 0, 1)), Err(GenError::Empty));
    }
}
