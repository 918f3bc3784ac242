//! Minimum Steiner trees that avoid unrequested red vertices.
//!
//! `T(S, v)` is stored for red sets `S` and roots `v` that are blue or lie in
//! `S`: the fewest edges of a tree containing `S ∪ {v}` whose only red
//! vertices are those of `S`. A red root outside `S` is folded in, so
//! [`SteinerTables::opt`]`(S, v)` reads `T(S ∪ {v}, v)` for such `v`.
//!
//! With `X = S \ {v}`, `|X| >= 2`:
//! `T(S, v) = min over w of d'(v, w) + min over ∅ ≠ Y ⊊ X of opt(Y, w) + opt(X \ Y, w)`
//! where `w` ranges over blue vertices and reds of `S`, and `d'` counts edges
//! of shortest paths whose interior avoids red vertices.

use std::collections::{BTreeSet, VecDeque};
use std::time::Instant;

use super::convolution::{masks_by_rank, proper_split_level};
use super::{ExactConfig, RedIndex, SteinerError, Strategy, INFINITY};
use crate::graph::{BicoloredGraph, Color};

/// Shortest path lengths whose internal vertices are all non-red, as a
/// row-major `n x n` table with [`INFINITY`] for unreachable pairs.
pub fn red_avoiding_distances(g: &BicoloredGraph, exec: crate::exec::Exec) -> Vec<u32> {
    let n = g.len();
    let rows = exec.map_range(n, |s| {
        let mut dist = vec![INFINITY; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u != s && g.color(u) == Color::Red {
                continue;
            }
            for &w in g.neighbors(u) {
                if dist[w] == INFINITY {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    });
    rows.concat()
}

/// A tree subgraph returned by traceback.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerTree {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct SteinerTables {
    n: usize,
    reds: RedIndex,
    dist: Vec<u32>,
    /// `t[s * n + v]`.
    t: Vec<u32>,
}

fn check_deadline(deadline: Option<Instant>) -> Result<(), SteinerError> {
    match deadline {
        Some(d) if Instant::now() >= d => Err(SteinerError::Timeout),
        _ => Ok(()),
    }
}

impl SteinerTables {
    pub fn compute(g: &BicoloredGraph, config: &ExactConfig) -> Result<Self, SteinerError> {
        let reds = RedIndex::new(g);
        if reds.len() > config.max_red {
            return Err(SteinerError::TooManyReds {
                reds: reds.len(),
                limit: config.max_red,
            });
        }
        let n = g.len();
        let bits = reds.len();
        let dist = red_avoiding_distances(g, config.exec);
        let mut tables = Self {
            n,
            reds,
            dist,
            t: vec![INFINITY; n << bits],
        };
        let by_rank = masks_by_rank(bits);
        // split[w][x]: best proper split of x at w; filled rank by rank.
        let mut split = vec![vec![INFINITY; 1 << bits]; n];

        for v in 0..n {
            match tables.reds.index(v) {
                None => tables.t[v] = 0,
                Some(i) => tables.t[(1 << i) * n + v] = 0,
            }
        }
        for &x in by_rank.get(1).into_iter().flatten() {
            let u = tables.reds.vertex(x.trailing_zeros() as usize);
            for v in 0..n {
                match tables.reds.index(v) {
                    None => tables.t[x * n + v] = tables.dist[u * n + v],
                    Some(i) if x & 1 << i == 0 => tables.t[(x | 1 << i) * n + v] = tables.dist[u * n + v],
                    Some(_) => {}
                }
            }
        }
        for level in 2..=bits {
            check_deadline(config.deadline)?;
            // Red roots: |X| = level - 1, so every split was filled last round.
            if level >= 3 {
                tables.fill_from_splits(&by_rank[level - 1], &split, true);
            }
            check_deadline(config.deadline)?;
            let computed: Vec<Vec<u32>> = {
                let tables = &tables;
                let by_rank = &by_rank;
                config.exec.map_range(n, |w| {
                    let phi = |y: usize| if y == 0 { INFINITY } else { tables.opt(y, w) };
                    match config.strategy {
                        Strategy::Fast => proper_split_level(bits, by_rank, level, &phi),
                        Strategy::Naive => by_rank[level]
                            .iter()
                            .map(|&x| {
                                let low = x & x.wrapping_neg();
                                let mut best = INFINITY;
                                // Fixing the lowest element on one side visits each split once.
                                let rest = x ^ low;
                                let mut y = rest;
                                loop {
                                    let a = phi(y | low);
                                    let b = phi(rest ^ y);
                                    if a != INFINITY && b != INFINITY {
                                        best = best.min(a + b);
                                    }
                                    if y == 0 {
                                        break;
                                    }
                                    y = (y - 1) & rest;
                                }
                                best
                            })
                            .collect(),
                    }
                })
            };
            for (w, values) in computed.into_iter().enumerate() {
                for (&x, v) in by_rank[level].iter().zip(values) {
                    split[w][x] = v;
                }
            }
            tables.fill_from_splits(&by_rank[level], &split, false);
        }
        Ok(tables)
    }

    /// With `red_roots`, sets `T(X ∪ {v}, v)` for red `v ∉ X`; otherwise
    /// `T(X, v)` for blue `v`. Every `X` must have rank at least 2.
    fn fill_from_splits(&mut self, xs: &[usize], split: &[Vec<u32>], red_roots: bool) {
        let n = self.n;
        for &x in xs {
            for v in 0..n {
                let s = match (self.reds.index(v), red_roots) {
                    (None, false) => x,
                    (Some(i), true) if x & 1 << i == 0 => x | 1 << i,
                    _ => continue,
                };
                let mut best = INFINITY;
                for w in 0..n {
                    if self.reds.index(w).is_some_and(|i| s & 1 << i == 0) {
                        continue;
                    }
                    let (d, c) = (self.dist[v * n + w], split[w][x]);
                    if d != INFINITY && c != INFINITY {
                        best = best.min(d + c);
                    }
                }
                self.t[s * n + v] = best;
            }
        }
    }

    pub fn red_index(&self) -> &RedIndex {
        &self.reds
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn distance(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    /// Stored entry for `S` (a red mask) and root `v`; [`INFINITY`] outside
    /// the domain or when no tree exists.
    pub fn raw(&self, s: usize, v: usize) -> u32 {
        self.t[s * self.n + v]
    }

    /// Edge count of the best tree containing `S ∪ {v}` and no other red
    /// vertex, or [`INFINITY`].
    pub fn opt(&self, s: usize, v: usize) -> u32 {
        match self.reds.index(v) {
            Some(i) => self.t[(s | 1 << i) * self.n + v],
            None => self.t[s * self.n + v],
        }
    }

    /// Whether `(S, v)` is a stored cell: `v` blue or `v ∈ S`.
    pub fn in_domain(&self, s: usize, v: usize) -> bool {
        self.reds.index(v).is_none_or(|i| s & 1 << i != 0)
    }

    fn path(&self, g: &BicoloredGraph, from: usize, to: usize, edges: &mut BTreeSet<(usize, usize)>) {
        let n = self.n;
        let mut prev = vec![usize::MAX; n];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            if u != from && g.color(u) == Color::Red {
                continue;
            }
            for &w in g.neighbors(u) {
                if prev[w] == usize::MAX {
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        let mut cur = to;
        while cur != from {
            let p = prev[cur];
            edges.insert((p.min(cur), p.max(cur)));
            cur = p;
        }
    }

    /// Rebuilds a tree realizing `opt(S, v)` by re-evaluating the recurrence.
    pub fn traceback(&self, g: &BicoloredGraph, s: usize, v: usize) -> Result<SteinerTree, SteinerError> {
        if self.opt(s, v) == INFINITY {
            return Err(SteinerError::Infeasible);
        }
        let n = self.n;
        let mut edges = BTreeSet::new();
        let mut vertices = BTreeSet::new();
        let mut stack = vec![(s, v)];
        while let Some((s, v)) = stack.pop() {
            vertices.insert(v);
            let target = self.opt(s, v);
            let x = match self.reds.index(v) {
                Some(i) => s & !(1 << i),
                None => s,
            };
            match x.count_ones() {
                0 => {}
                1 => {
                    let u = self.reds.vertex(x.trailing_zeros() as usize);
                    vertices.insert(u);
                    self.path(g, u, v, &mut edges);
                }
                _ => {
                    let full = x | self.reds.index(v).map_or(0, |i| 1 << i);
                    let low = x & x.wrapping_neg();
                    let rest = x ^ low;
                    let found = (0..n)
                        .filter(|&w| self.reds.index(w).is_none_or(|i| full & 1 << i != 0))
                        .find_map(|w| {
                            let d = self.dist[v * n + w];
                            if d == INFINITY {
                                return None;
                            }
                            let mut y = rest;
                            loop {
                                let (a, b) = (self.opt(y | low, w), self.opt(rest ^ y, w));
                                if y | low != x && a != INFINITY && b != INFINITY && d + a + b == target {
                                    return Some((w, y | low));
                                }
                                if y == 0 {
                                    return None;
                                }
                                y = (y - 1) & rest;
                            }
                        });
                    let (w, y) = found.expect("finite entries are realizable");
                    self.path(g, v, w, &mut edges);
                    stack.push((y, w));
                    stack.push((x ^ y, w));
                }
            }
        }
        for &(a, b) in &edges {
            vertices.insert(a);
            vertices.insert(b);
        }
        Ok(SteinerTree {
            vertices: vertices.into_iter().collect(),
            edges: edges.into_iter().collect(),
        })
    }
}

/// All `T(S, v)` via direct enumeration of splits.
pub fn steiner_excluding_naive(g: &BicoloredGraph, config: &ExactConfig) -> Result<SteinerTables, SteinerError> {
    SteinerTables::compute(
        g,
        &ExactConfig {
            strategy: Strategy::Naive,
            ..config.clone()
        },
    )
}

/// All `T(S, v)` via fast subset convolution, one rank at a time.
pub fn steiner_excluding_fast(g: &BicoloredGraph, config: &ExactConfig) -> Result<SteinerTables, SteinerError> {
    SteinerTables::compute(
        g,
        &ExactConfig {
            strategy: Strategy::Fast,
            ..config.clone()
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::graph::Color::{Blue as B, Red as R};

    fn graph(colors: &[Color], edges: &[(usize, usize)]) -> BicoloredGraph {
        BicoloredGraph::unweighted(colors.to_vec(), edges.iter().copied()).unwrap()
    }

    #[test]
    fn distances() {
        let p = graph(&[R, B, R], &[(0, 1), (1, 2)]);
        let d = red_avoiding_distances(&p, Exec::Sequential);
        assert_eq!((d[1], d[2], d[5]), (1, 2, 1));
        let reds = graph(&[R, R, R], &[(0, 2), (2, 1)]);
        let d = red_avoiding_distances(&reds, Exec::Sequential);
        assert_eq!(d[1], INFINITY);
        assert_eq!(d[2], 1);
    }

    #[test]
    fn path_tables() {
        let p = graph(&[R, B, R], &[(0, 1), (1, 2)]);
        for strategy in [Strategy::Naive, Strategy::Fast] {
            let cfg = ExactConfig {
                strategy,
                ..ExactConfig::default()
            };
            let t = SteinerTables::compute(&p, &cfg).unwrap();
            let r1 = t.red_index().mask(&[0]);
            assert_eq!(t.opt(0, 1), 0);
            assert_eq!(t.opt(r1, 2), 2);
            let tree = t.traceback(&p, r1, 2).unwrap();
            assert_eq!(tree.vertices, vec![0, 1, 2]);
            assert_eq!(tree.edges, vec![(0, 1), (1, 2)]);
            assert_eq!(t.traceback(&p, 0, 1).unwrap().vertices, vec![1]);
        }
    }
}
