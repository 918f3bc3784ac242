//! Interval representations of interval graphs.

use thiserror::Error;

use crate::graph::BicoloredGraph;

/// Closed interval `[left, right]` with `left < right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub left: i64,
    pub right: i64,
}

impl Interval {
    pub fn new(left: i64, right: i64) -> Self {
        Self { left, right }
    }

    #[inline]
    pub fn intersects(&self, other: &Interval) -> bool {
        self.left <= other.right && other.left <= self.right
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("interval of vertex {vertex} has left endpoint {left} >= right endpoint {right}")]
    Degenerate { vertex: usize, left: i64, right: i64 },
    #[error("representation has {actual} intervals but the graph has {expected} vertices")]
    WrongCount { expected: usize, actual: usize },
    #[error("vertices {0} and {1}: adjacency disagrees with interval intersection")]
    Mismatch(usize, usize),
}

/// One interval per vertex, indexed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalRepresentation {
    intervals: Vec<Interval>,
}

impl IntervalRepresentation {
    pub fn new(intervals: Vec<Interval>) -> Result<Self, IntervalError> {
        if let Some((vertex, iv)) = intervals.iter().enumerate().find(|(_, iv)| iv.left >= iv.right) {
            return Err(IntervalError::Degenerate {
                vertex,
                left: iv.left,
                right: iv.right,
            });
        }
        Ok(Self { intervals })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Whether the 2n endpoints are exactly the integers `1..=2n`.
    pub fn is_normalized(&self) -> bool {
        let n = self.len() as i64;
        let mut seen = vec![false; 2 * self.len() + 1];
        for iv in &self.intervals {
            for p in [iv.left, iv.right] {
                if p < 1 || p > 2 * n || std::mem::replace(&mut seen[p as usize], true) {
                    return false;
                }
            }
        }
        true
    }

    /// Remaps endpoints onto `1..=2n`, preserving order. Coinciding endpoints
    /// are ordered left-before-right (so touching closed intervals still
    /// intersect), then by vertex id.
    pub fn normalize(&self) -> Self {
        let mut events: Vec<(i64, u8, usize)> = Vec::with_capacity(2 * self.len());
        for (v, iv) in self.intervals.iter().enumerate() {
            events.push((iv.left, 0, v));
            events.push((iv.right, 1, v));
        }
        events.sort_unstable();
        let mut out = self.intervals.clone();
        for (rank, &(_, kind, v)) in events.iter().enumerate() {
            let coord = rank as i64 + 1;
            if kind == 0 {
                out[v].left = coord;
            } else {
                out[v].right = coord;
            }
        }
        Self { intervals: out }
    }

    /// All intersecting pairs `(u, v)` with `u < v`, by a left-to-right sweep.
    pub fn intersection_edges(&self) -> Vec<(usize, usize)> {
        let mut events: Vec<(i64, u8, usize)> = Vec::with_capacity(2 * self.len());
        for (v, iv) in self.intervals.iter().enumerate() {
            events.push((iv.left, 0, v));
            events.push((iv.right, 1, v));
        }
        events.sort_unstable();
        let mut active: Vec<usize> = Vec::new();
        let mut position = vec![usize::MAX; self.len()];
        let mut edges = Vec::new();
        for (_, kind, v) in events {
            if kind == 0 {
                edges.extend(active.iter().map(|&u| (u.min(v), u.max(v))));
                position[v] = active.len();
                active.push(v);
            } else {
                let at = position[v];
                let last = *active.last().expect("active interval");
                active.swap_remove(at);
                if last != v {
                    position[last] = at;
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    /// Checks that `g` is exactly the intersection graph of this representation.
    pub fn check_represents(&self, g: &BicoloredGraph) -> Result<(), IntervalError> {
        if self.len() != g.len() {
            return Err(IntervalError::WrongCount {
                expected: g.len(),
                actual: self.len(),
            });
        }
        let mut expected = self.intersection_edges();
        let mut actual: Vec<(usize, usize)> = g.edges().to_vec();
        actual.sort_unstable();
        if expected == actual {
            return Ok(());
        }
        expected.retain(|e| actual.binary_search(e).is_err());
        let (u, v) = expected.first().copied().unwrap_or_else(|| {
            *actual
                .iter()
                .find(|&&(u, v)| !self.intervals[u].intersects(&self.intervals[v]))
                .expect("edge sets differ")
        });
        Err(IntervalError::Mismatch(u, v))
    }
}

/// Validates raw intervals and normalizes them onto `1..=2n`.
pub fn normalize_intervals(raw: &[Interval]) -> Result<IntervalRepresentation, IntervalError> {
    Ok(IntervalRepresentation::new(raw.to_vec())?.normalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(pairs: &[(i64, i64)]) -> IntervalRepresentation {
        IntervalRepresentation::new(pairs.iter().map(|&(l, r)| Interval::new(l, r)).collect()).unwrap()
    }

    fn adjacency(r: &IntervalRepresentation) -> Vec<Vec<bool>> {
        let ivs = r.intervals();
        ivs.iter()
            .map(|a| ivs.iter().map(|b| a.intersects(b)).collect())
            .collect()
    }

    #[test]
    fn distinct_endpoints_are_kept_up_to_order() {
        let r = rep(&[(1, 4), (2, 5), (3, 6)]);
        assert!(r.is_normalized());
        assert_eq!(r.normalize(), r);
    }

    #[test]
    fn coinciding_intervals_still_intersect() {
        let r = rep(&[(0, 10), (0, 10)]);
        let n = r.normalize();
        assert!(n.is_normalized());
        assert_eq!(adjacency(&r), adjacency(&n));
        assert!(n.intervals()[0].intersects(&n.intervals()[1]));
    }

    #[test]
    fn touching_endpoints_stay_adjacent() {
        let r = rep(&[(0, 5), (5, 9), (10, 12)]);
        let n = r.normalize();
        assert_eq!(adjacency(&r), adjacency(&n));
        assert_eq!(n.intersection_edges(), vec![(0, 1)]);
    }

    #[test]
    fn degenerate_interval_is_rejected() {
        assert_eq!(
            normalize_intervals(&[Interval::new(3, 3)]),
            Err(IntervalError::Degenerate {
                vertex: 0,
                left: 3,
                right: 3
            })
        );
    }

    #[test]
    fn sweep_matches_pairwise_intersection() {
        let r = rep(&[(0, 3), (1, 2), (2, 8), (5, 6), (9, 10), (7, 9)]);
        let mut brute = Vec::new();
        for u in 0..r.len() {
            for v in u + 1..r.len() {
                if r.intervals()[u].intersects(&r.intervals()[v]) {
                    brute.push((u, v));
                }
            }
        }
        assert_eq!(r.intersection_edges(), brute);
    }
}
