//! Exhaustive reference solvers. Slow on purpose and kept simple enough to
//! trust; every fast solver in the crate is tested against these.

use thiserror::Error;

use crate::graph::{BicoloredGraph, Color, Measure, SolveResult};
use crate::steiner::INFINITY;

/// Largest graph the connected-set enumeration accepts.
pub const MAX_ORACLE_VERTICES: usize = 22;
/// Largest graph accepted by the Steiner oracle.
pub const MAX_STEINER_ORACLE_VERTICES: usize = 16;
/// Largest ground set accepted by the naive convolution.
pub const MAX_CONVOLUTION_BITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{size} exceeds the brute-force limit of {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("vertex {0} is not in the graph")]
    InvalidVertex(usize),
    #[error("vertex {0} is not red")]
    NotRed(usize),
    #[error("tables have lengths {0} and {1}, expected equal powers of two")]
    TableShape(usize, usize),
}

fn guard(size: usize, limit: usize) -> Result<(), OracleError> {
    if size > limit {
        Err(OracleError::TooLarge { size, limit })
    } else {
        Ok(())
    }
}

fn neighbor_masks(g: &BicoloredGraph) -> Vec<u32> {
    (0..g.len())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect()
}

fn mask_to_vec(mut mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// Calls `visit` once for every non-empty connected vertex set inside
/// `allowed`. Each set is grown from its minimum vertex; a candidate is either
/// added or forbidden for the remaining branches, so no set is produced twice.
fn for_each_connected_set(adj: &[u32], allowed: u32, visit: &mut impl FnMut(u32)) {
    fn grow(adj: &[u32], set: u32, candidates: u32, forbidden: u32, visit: &mut impl FnMut(u32)) {
        visit(set);
        let mut forbidden = forbidden;
        let mut rest = candidates;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let bit = 1u32 << u;
            let grown = set | bit;
            let next = (candidates | adj[u]) & !grown & !forbidden & !bit;
            grow(adj, grown, next, forbidden, visit);
            forbidden |= bit;
        }
    }
    for v in 0..adj.len() {
        let bit = 1u32 << v;
        if allowed & bit == 0 {
            continue;
        }
        // Vertices below v, and those outside `allowed`, never join.
        let forbidden = (bit - 1) | !allowed;
        grow(adj, bit, adj[v] & !forbidden, forbidden, visit);
    }
}

fn best_balanced(g: &BicoloredGraph, measure: Measure) -> Result<SolveResult, OracleError> {
    guard(g.len(), MAX_ORACLE_VERTICES)?;
    let adj = neighbor_masks(g);
    let all = if g.is_empty() { 0 } else { u32::MAX >> (32 - g.len()) };
    let signed: Vec<i64> = (0..g.len())
        .map(|v| {
            let w = match measure {
                Measure::Cardinality => 1,
                Measure::Weight => g.weight(v) as i64,
            };
            g.color(v).sign() * w
        })
        .collect();
    let size: Vec<u64> = (0..g.len())
        .map(|v| match measure {
            Measure::Cardinality => 1,
            Measure::Weight => g.weight(v),
        })
        .collect();
    let mut best = (0u64, 0u32);
    for_each_connected_set(&adj, all, &mut |set| {
        let mut balance = 0i64;
        let mut objective = 0u64;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            balance += signed[v];
            objective += size[v];
        }
        if balance == 0 && objective > best.0 {
            best = (objective, set);
        }
    });
    Ok(SolveResult::from_witness(g, mask_to_vec(best.1), measure))
}

/// Maximum balanced connected vertex set by cardinality.
pub fn brute_force_bcs(g: &BicoloredGraph) -> Result<SolveResult, OracleError> {
    best_balanced(g, Measure::Cardinality)
}

/// Maximum balanced connected vertex set by weight.
pub fn brute_force_wbcs(g: &BicoloredGraph) -> Result<SolveResult, OracleError> {
    best_balanced(g, Measure::Weight)
}

/// Whether some connected set with equal blue and red counts has exactly
/// `reds` as its red vertices.
pub fn balanced_with_red_set(g: &BicoloredGraph, reds: &[usize]) -> Result<bool, OracleError> {
    guard(g.len(), MAX_ORACLE_VERTICES)?;
    let mut red_mask = 0u32;
    for &r in reds {
        if r >= g.len() {
            return Err(OracleError::InvalidVertex(r));
        }
        if g.color(r) != Color::Red {
            return Err(OracleError::NotRed(r));
        }
        red_mask |= 1 << r;
    }
    if red_mask == 0 {
        return Ok(true);
    }
    let adj = neighbor_masks(g);
    let blue_mask = g.vertices_of(Color::Blue).iter().fold(0u32, |m, &v| m | 1 << v);
    let k = red_mask.count_ones();
    let mut found = false;
    for_each_connected_set(&adj, blue_mask | red_mask, &mut |set| {
        if set & red_mask == red_mask && (set & blue_mask).count_ones() == k {
            found = true;
        }
    });
    Ok(found)
}

/// Minimum edge count of a connected subgraph containing `s ∪ {v}` and no red
/// vertex outside it, with the vertex set of one optimal subgraph; `None`
/// when no such subgraph exists.
pub fn brute_force_steiner_excluding(
    g: &BicoloredGraph,
    s: &[usize],
    v: usize,
) -> Result<Option<(usize, Vec<usize>)>, OracleError> {
    guard(g.len(), MAX_STEINER_ORACLE_VERTICES)?;
    if v >= g.len() {
        return Err(OracleError::InvalidVertex(v));
    }
    let mut terminals = 1u32 << v;
    for &r in s {
        if r >= g.len() {
            return Err(OracleError::InvalidVertex(r));
        }
        if g.color(r) != Color::Red {
            return Err(OracleError::NotRed(r));
        }
        terminals |= 1 << r;
    }
    let non_red = (0..g.len())
        .filter(|&u| g.color(u) != Color::Red)
        .fold(0u32, |m, u| m | 1 << u);
    let adj = neighbor_masks(g);
    let mut best: Option<u32> = None;
    for_each_connected_set(&adj, non_red | terminals, &mut |set| {
        if set & terminals == terminals && best.is_none_or(|b| set.count_ones() < b.count_ones()) {
            best = Some(set);
        }
    });
    // A connected set on k vertices contains a spanning tree with k - 1 edges.
    Ok(best.map(|set| (set.count_ones() as usize - 1, mask_to_vec(set))))
}

/// `h(X) = min over Y ⊆ X of f(Y) + g(X \ Y)` by direct enumeration of every
/// split. Entries equal to [`INFINITY`] are absent values.
pub fn naive_min_sum_convolution(f: &[u32], g: &[u32]) -> Result<Vec<u32>, OracleError> {
    if f.len() != g.len() || !f.len().is_power_of_two() {
        return Err(OracleError::TableShape(f.len(), g.len()));
    }
    guard(f.len().trailing_zeros() as usize, MAX_CONVOLUTION_BITS)?;
    let mut h = vec![INFINITY; f.len()];
    for (x, hx) in h.iter_mut().enumerate() {
        let mut y = x;
        loop {
            let (a, b) = (f[y], g[x ^ y]);
            if a != INFINITY && b != INFINITY {
                *hx = (*hx).min(a + b);
            }
            if y == 0 {
                break;
            }
            y = (y - 1) & x;
        }
    }
    Ok(h)
}

/// Whether some sub-multiset of `items` sums to `target`.
pub fn subset_sum_exists(items: &[u64], target: u64) -> bool {
    assert!(items.len() < 32, "exhaustive search over at most 31 items");
    (0u32..1 << items.len()).any(|mask| {
        mask_to_vec(mask).iter().map(|&i| items[i]).sum::<u64>() == target
    })
}

/// Whether some subfamily of `triples` partitions `0..num_elements`.
pub fn exact_cover_exists(num_elements: usize, triples: &[[usize; 3]]) -> bool {
    assert!(triples.len() < 32, "exhaustive search over at most 31 triples");
    let full: u64 = if num_elements == 64 { u64::MAX } else { (1 << num_elements) - 1 };
    let masks: Vec<u64> = triples.iter().map(|t| t.iter().fold(0, |m, &e| m | 1 << e)).collect();
    (0u32..1 << triples.len()).any(|choice| {
        let mut covered = 0u64;
        for i in mask_to_vec(choice) {
            if covered & masks[i] != 0 {
                return false;
            }
            covered |= masks[i];
        }
        covered == full
    })
}
