//! Weighted instances encoding SUBSET SUM and EXACT 3-COVER.

use std::collections::HashSet;

use thiserror::Error;

use super::format::{Instance, Problem};
use crate::graph::{BicoloredGraph, Color, MAX_TOTAL_WEIGHT};

/// An encoded instance and the objective value that certifies a yes-instance
/// of the source problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoded {
    pub instance: Instance,
    pub target: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("the item list is empty")]
    NoItems,
    #[error("item {0} has size 0")]
    ZeroItem(usize),
    #[error("the target must be positive")]
    ZeroTarget,
    #[error("ground set size {0} is not a positive multiple of 3")]
    GroundSetSize(usize),
    #[error("at least two triples are required, got {0}")]
    TooFewTriples(usize),
    #[error("triple {triple} mentions element {element} outside the ground set")]
    UnknownElement { triple: usize, element: usize },
    #[error("triple {0} repeats an element")]
    RepeatedElement(usize),
    #[error("triple {0} duplicates an earlier triple")]
    DuplicateTriple(usize),
    #[error("weights overflow")]
    Overflow,
}

/// Star with a blue center of weight `b` and one red leaf of weight `s[i]`
/// per item. The optimum reaches `2b` iff some subset of `s` sums to `b`.
pub fn encode_subset_sum_star(s: &[u64], b: u64) -> Result<Encoded, ReductionError> {
    if s.is_empty() {
        return Err(ReductionError::NoItems);
    }
    if b == 0 {
        return Err(ReductionError::ZeroTarget);
    }
    if let Some(i) = s.iter().position(|&x| x == 0) {
        return Err(ReductionError::ZeroItem(i));
    }
    s.iter()
        .try_fold(b, |acc, &x| acc.checked_add(x))
        .filter(|&t| t <= MAX_TOTAL_WEIGHT)
        .ok_or(ReductionError::Overflow)?;
    let mut colors = vec![Color::Blue];
    colors.extend(std::iter::repeat_n(Color::Red, s.len()));
    let mut weights = vec![b];
    weights.extend_from_slice(s);
    let graph = BicoloredGraph::new(colors, Some(weights), (1..=s.len()).map(|i| (0, i)))
        .map_err(|_| ReductionError::Overflow)?;
    Ok(Encoded {
        instance: Instance::new(Problem::Wbcs, graph),
        target: 2 * b,
    })
}

fn validate_x3c(num_elements: usize, triples: &[[usize; 3]]) -> Result<(), ReductionError> {
    if num_elements == 0 || !num_elements.is_multiple_of(3) {
        return Err(ReductionError::GroundSetSize(num_elements));
    }
    if triples.len() < 2 {
        return Err(ReductionError::TooFewTriples(triples.len()));
    }
    let mut seen = HashSet::new();
    for (t, triple) in triples.iter().enumerate() {
        if let Some(&element) = triple.iter().find(|&&e| e >= num_elements) {
            return Err(ReductionError::UnknownElement { triple: t, element });
        }
        let mut sorted = *triple;
        sorted.sort_unstable();
        if sorted[0] == sorted[1] || sorted[1] == sorted[2] {
            return Err(ReductionError::RepeatedElement(t));
        }
        if !seen.insert(sorted) {
            return Err(ReductionError::DuplicateTriple(t));
        }
    }
    Ok(())
}

/// Vertex layout: elements `0..|e|` (blue, weight 1), triples
/// `|e|..|e|+|f|` (red, weight `n^2` with `n = |f|`), then the hub (blue,
/// weight `k(n^2 - 3)` with `|e| = 3k`). Target `2kn^2`.
fn x3c_graph(num_elements: usize, triples: &[[usize; 3]], clique: bool) -> Result<Encoded, ReductionError> {
    validate_x3c(num_elements, triples)?;
    let n = triples.len() as u64;
    let k = (num_elements / 3) as u64;
    let triple_weight = n.checked_mul(n).ok_or(ReductionError::Overflow)?;
    let hub_weight = k.checked_mul(triple_weight - 3).ok_or(ReductionError::Overflow)?;
    let target = k
        .checked_mul(triple_weight)
        .and_then(|x| x.checked_mul(2))
        .filter(|&t| t <= MAX_TOTAL_WEIGHT)
        .ok_or(ReductionError::Overflow)?;

    let first_triple = num_elements;
    let hub = first_triple + triples.len();
    let mut colors = vec![Color::Blue; num_elements];
    colors.extend(std::iter::repeat_n(Color::Red, triples.len()));
    colors.push(Color::Blue);
    let mut weights = vec![1; num_elements];
    weights.extend(std::iter::repeat_n(triple_weight, triples.len()));
    weights.push(hub_weight);

    let mut edges = Vec::new();
    for (t, triple) in triples.iter().enumerate() {
        for &e in triple {
            edges.push((e, first_triple + t));
        }
        edges.push((first_triple + t, hub));
    }
    if clique {
        for a in 0..triples.len() {
            for b in a + 1..triples.len() {
                edges.push((first_triple + a, first_triple + b));
            }
        }
    }
    let graph = BicoloredGraph::new(colors, Some(weights), edges).map_err(|_| ReductionError::Overflow)?;
    Ok(Encoded {
        instance: Instance::new(Problem::Wbcs, graph),
        target,
    })
}

/// Properly colored bipartite encoding of an X3C instance over elements
/// `0..num_elements`.
pub fn encode_x3c_bipartite(num_elements: usize, triples: &[[usize; 3]]) -> Result<Encoded, ReductionError> {
    x3c_graph(num_elements, triples, false)
}

/// The bipartite encoding with the triple vertices turned into a clique,
/// which makes the graph split.
pub fn encode_x3c_split(num_elements: usize, triples: &[[usize; 3]]) -> Result<Encoded, ReductionError> {
    x3c_graph(num_elements, triples, true)
}
