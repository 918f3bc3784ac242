#![allow(dead_code)]

use std::collections::VecDeque;

use bcs_core::io::{gen_random, Family, GenConfig, Instance};
use bcs_core::{validate_witness, BicoloredGraph, Color, Measure, SolveResult};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` instances of a family with `n` uniform in `1..=max_n` and a random
/// blue ratio.
pub fn sweep(family: Family, count: usize, max_n: usize, seed: u64) -> Vec<Instance> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(1..=max_n);
            let ratio = r.gen_range(0.2..=0.8);
            gen_random(&GenConfig::new(family, n, r.gen()).with_ratio(ratio)).unwrap()
        })
        .collect()
}

pub fn graph(colors: &[Color], edges: &[(usize, usize)]) -> BicoloredGraph {
    BicoloredGraph::unweighted(colors.to_vec(), edges.iter().copied()).unwrap()
}

/// Witness check written against the definitions only: ids valid and
/// distinct, induced subgraph connected, color totals equal, objective right.
pub fn check_witness(g: &BicoloredGraph, r: &SolveResult) {
    let w = &r.witness;
    let mut inside = vec![false; g.len()];
    for &v in w {
        assert!(v < g.len(), "unknown vertex {v}");
        assert!(!inside[v], "duplicate vertex {v}");
        inside[v] = true;
    }
    if let Some(&s) = w.first() {
        let mut seen = vec![false; g.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &x in g.neighbors(u) {
                if inside[x] && !seen[x] {
                    seen[x] = true;
                    reached += 1;
                    queue.push_back(x);
                }
            }
        }
        assert_eq!(reached, w.len(), "witness {w:?} is not connected");
    }
    let unit = r.measure == Measure::Cardinality;
    let weight = |v: usize| if unit { 1 } else { g.weight(v) };
    let blue: u64 = w.iter().filter(|&&v| g.color(v) == Color::Blue).map(|&v| weight(v)).sum();
    let red: u64 = w.iter().filter(|&&v| g.color(v) == Color::Red).map(|&v| weight(v)).sum();
    assert_eq!(blue, red, "witness {w:?} is unbalanced");
    assert_eq!(blue + red, r.objective, "objective does not match witness {w:?}");
    assert_eq!(validate_witness(g, r), Ok(()));
}
