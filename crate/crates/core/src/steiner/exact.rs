use std::collections::{BTreeSet, VecDeque};
use std::time::Instant;

use super::convolution::masks_by_rank;
use super::{ExactConfig, SteinerError, SteinerTables, INFINITY};
use crate::graph::{BicoloredGraph, Color, Measure, SolveResult};

/// Grows `tree` by blue vertices adjacent to it, smallest id first, until it
/// has `k` blues. Returns `None` when the reachable blues run out first: then
/// no balanced connected set has exactly the tree's reds.
pub fn greedy_blue_extension(
    g: &BicoloredGraph,
    tree: &[usize],
    k: usize,
) -> Result<Option<Vec<usize>>, SteinerError> {
    let reds = tree.iter().filter(|&&v| g.color(v) == Color::Red).count();
    let mut blues = tree.iter().filter(|&&v| g.color(v) == Color::Blue).count();
    if reds != k {
        return Err(SteinerError::Precondition(format!("tree has {reds} red vertices, expected {k}")));
    }
    if blues > k {
        return Err(SteinerError::Precondition(format!("tree already has {blues} > {k} blue vertices")));
    }
    let mut inside = vec![false; g.len()];
    let mut frontier = BTreeSet::new();
    for &v in tree {
        inside[v] = true;
    }
    for &v in tree {
        frontier.extend(g.neighbors(v).iter().filter(|&&w| !inside[w] && g.color(w) == Color::Blue));
    }
    let mut set = tree.to_vec();
    while blues < k {
        let Some(v) = frontier.pop_first() else {
            return Ok(None);
        };
        inside[v] = true;
        set.push(v);
        blues += 1;
        frontier.extend(g.neighbors(v).iter().filter(|&&w| !inside[w] && g.color(w) == Color::Blue));
    }
    set.sort_unstable();
    Ok(Some(set))
}

/// Blue vertices in the component of `G[B ∪ S]` containing the reds of `s`,
/// or `None` when those reds are not in one component.
fn component_blues(g: &BicoloredGraph, tables: &SteinerTables, s: usize) -> Option<usize> {
    let reds = tables.red_index();
    let members = reds.vertices(s);
    let mut seen = vec![false; g.len()];
    let mut queue = VecDeque::from([members[0]]);
    seen[members[0]] = true;
    let mut blues = 0;
    while let Some(u) = queue.pop_front() {
        if g.color(u) == Color::Blue {
            blues += 1;
        }
        for &w in g.neighbors(u) {
            let allowed = reds.index(w).is_none_or(|i| s & 1 << i != 0);
            if allowed && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    members.iter().all(|&r| seen[r]).then_some(blues)
}

/// Exact maximum balanced connected subgraph with the default configuration.
pub fn solve_exact_bcs(g: &BicoloredGraph) -> Result<SolveResult, SteinerError> {
    solve_exact_bcs_with(g, &ExactConfig::default())
}

pub fn solve_exact_bcs_with(g: &BicoloredGraph, config: &ExactConfig) -> Result<SolveResult, SteinerError> {
    // Balance is symmetric in the colors; work with the smaller class as red.
    let swapped;
    let h = if g.count_color(Color::Red) > g.count_color(Color::Blue) {
        swapped = g.swap_colors();
        &swapped
    } else {
        g
    };
    let tables = SteinerTables::compute(h, config)?;
    let n = h.len();
    let by_rank = masks_by_rank(tables.red_index().len());
    for k in (1..by_rank.len()).rev() {
        if config.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(SteinerError::Timeout);
        }
        for &s in &by_rank[k] {
            // A tree on T + 1 vertices with k reds has at most k blues iff T <= 2k - 1.
            let Some((t, v)) = (0..n)
                .filter(|&v| tables.in_domain(s, v))
                .map(|v| (tables.raw(s, v), v))
                .min()
                .filter(|&(t, _)| t != INFINITY && (t as usize) < 2 * k)
            else {
                continue;
            };
            debug_assert!(t != INFINITY);
            if component_blues(h, &tables, s).is_none_or(|b| b < k) {
                continue;
            }
            let tree = tables.traceback(h, s, v)?;
            if let Some(witness) = greedy_blue_extension(h, &tree.vertices, k)? {
                return Ok(SolveResult::from_witness(g, witness, Measure::Cardinality));
            }
        }
    }
    Ok(SolveResult::empty(Measure::Cardinality))
}
