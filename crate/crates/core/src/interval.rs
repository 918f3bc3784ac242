//! Balanced connected subgraphs of interval graphs in cubic time.
//!
//! Intervals are processed by increasing left endpoint. After step `i` the
//! row of interval `j` (`j <= i`) holds, per balance `d`, the largest set among
//! the first `i` intervals that is connected, has balance `d`, and whose
//! largest right endpoint is the right endpoint of `j`. Adding interval `i`
//! can only extend rows whose right endpoint exceeds `r_i` (such a set already
//! reaches past `l_i`) and opens row `i` itself from rows ending inside
//! `(l_i, r_i)`.

use thiserror::Error;

use crate::graph::{BicoloredGraph, Measure, SolveResult};
use crate::io::{IntervalError, IntervalRepresentation};

const NONE: i32 = i32::MIN / 2;
const SINGLETON: u32 = u32::MAX;
const UNREACHED: u32 = u32::MAX - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalSolveError {
    #[error("instance carries no interval representation")]
    MissingIntervals,
    #[error(transparent)]
    Representation(#[from] IntervalError),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("vertex set is not connected")]
    NotConnected,
    #[error("vertex {0} is not in the graph")]
    InvalidVertex(usize),
}

/// Run of the dynamic program with the traceback records it needs.
#[derive(Clone, Debug)]
pub struct IntervalDp {
    /// Vertex ids by increasing left endpoint.
    order: Vec<usize>,
    left: Vec<i64>,
    right: Vec<i64>,
    sign: Vec<i64>,
    width: usize,
    table: Vec<i32>,
    /// `took[i]`: bit `j * width + d` set when step `i` extended row `j` at `d`.
    took: Vec<Vec<u64>>,
    /// `opened[i][d]`: row that step `i` extended into row `i` at `d`.
    opened: Vec<Vec<u32>>,
    history: Option<Vec<Vec<i32>>>,
}

impl IntervalDp {
    /// Runs the DP. With `keep_history` every intermediate table is retained
    /// so that [`IntervalDp::entry`] can answer for any step.
    pub fn new(
        g: &BicoloredGraph,
        rep: &IntervalRepresentation,
        keep_history: bool,
    ) -> Result<Self, IntervalSolveError> {
        rep.check_represents(g)?;
        let rep = rep.normalize();
        let n = g.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| rep.intervals()[v].left);
        let left: Vec<i64> = order.iter().map(|&v| rep.intervals()[v].left).collect();
        let right: Vec<i64> = order.iter().map(|&v| rep.intervals()[v].right).collect();
        let sign: Vec<i64> = order.iter().map(|&v| g.color(v).sign()).collect();
        let width = 2 * n + 1;
        let mut dp = Self {
            order,
            left,
            right,
            sign,
            width,
            table: vec![NONE; n * width],
            took: Vec::with_capacity(n),
            opened: Vec::with_capacity(n),
            history: keep_history.then(|| vec![vec![NONE; n * width]]),
        };
        for i in 0..n {
            dp.step(i);
            if let Some(h) = dp.history.as_mut() {
                h.push(dp.table.clone());
            }
        }
        Ok(dp)
    }

    fn step(&mut self, i: usize) {
        let (w, n) = (self.width, self.order.len());
        let f = self.sign[i];
        let shift = |d: usize| -> Option<usize> {
            let s = d as i64 - f;
            (0..w as i64).contains(&s).then_some(s as usize)
        };

        let mut opened = vec![UNREACHED; w];
        let mut fresh = vec![NONE; w];
        let start = (n as i64 + f) as usize;
        fresh[start] = 1;
        opened[start] = SINGLETON;
        for j in 0..i {
            if self.right[j] <= self.left[i] || self.right[j] >= self.right[i] {
                continue;
            }
            let row = &self.table[j * w..(j + 1) * w];
            for d in 0..w {
                if let Some(s) = shift(d) {
                    if row[s] > NONE && row[s] + 1 > fresh[d] {
                        fresh[d] = row[s] + 1;
                        opened[d] = j as u32;
                    }
                }
            }
        }

        let mut took = vec![0u64; (i * w).div_ceil(64)];
        for j in 0..i {
            if self.right[j] <= self.right[i] {
                continue;
            }
            let row = &mut self.table[j * w..(j + 1) * w];
            let old = row.to_vec();
            for d in 0..w {
                if let Some(s) = shift(d) {
                    if old[s] > NONE && old[s] + 1 > old[d] {
                        row[d] = old[s] + 1;
                        let bit = j * w + d;
                        took[bit / 64] |= 1 << (bit % 64);
                    }
                }
            }
        }
        self.table[i * w..(i + 1) * w].copy_from_slice(&fresh);
        self.took.push(took);
        self.opened.push(opened);
    }

    /// Vertex ids sorted by left endpoint; position `j` in this order is the
    /// row index used by [`IntervalDp::entry`].
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Value after the first `step` intervals for the row of interval `j`
    /// (by sorted position) at balance `d`. Requires `keep_history`.
    pub fn entry(&self, step: usize, j: usize, d: i64) -> Option<u32> {
        let history = self.history.as_ref().expect("history was not kept");
        let n = self.order.len() as i64;
        if !(-n..=n).contains(&d) {
            return None;
        }
        let v = history[step][j * self.width + (d + n) as usize];
        (v > NONE).then_some(v as u32)
    }

    /// Vertex ids of a set realizing row `j` at balance `d` after `step`
    /// intervals.
    pub fn traceback(&self, step: usize, j: usize, d: i64) -> Vec<usize> {
        let n = self.order.len() as i64;
        let w = self.width;
        let mut out = Vec::new();
        let (mut j, mut d) = (j, d);
        for i in (0..step).rev() {
            let di = (d + n) as usize;
            if j == i {
                out.push(self.order[i]);
                match self.opened[i][di] {
                    SINGLETON => return out,
                    UNREACHED => panic!("traceback through an unreachable entry"),
                    p => j = p as usize,
                }
                d -= self.sign[i];
            } else if j < i && self.right[j] > self.right[i] {
                let bit = j * w + di;
                if self.took[i][bit / 64] >> (bit % 64) & 1 == 1 {
                    out.push(self.order[i]);
                    d -= self.sign[i];
                }
            }
        }
        panic!("traceback did not reach a singleton");
    }

    /// Largest balanced entry over all rows after the last step.
    pub fn best(&self) -> SolveResult {
        let n = self.order.len();
        let mut best: Option<(i32, usize)> = None;
        for j in 0..n {
            let v = self.table[j * self.width + n];
            if v > 0 && best.is_none_or(|(b, _)| v > b) {
                best = Some((v, j));
            }
        }
        match best {
            None => SolveResult::empty(Measure::Cardinality),
            Some((value, j)) => {
                let mut witness = self.traceback(n, j, 0);
                witness.sort_unstable();
                debug_assert_eq!(witness.len(), value as usize);
                SolveResult {
                    objective: value as u64,
                    witness,
                    measure: Measure::Cardinality,
                }
            }
        }
    }
}

/// Maximum balanced connected subgraph of an interval graph given with its
/// representation.
pub fn solve_interval_bcs(g: &BicoloredGraph, rep: &IntervalRepresentation) -> Result<SolveResult, IntervalSolveError> {
    Ok(IntervalDp::new(g, rep, false)?.best())
}

fn intervals_connected(mut ivs: Vec<(i64, i64)>) -> bool {
    ivs.sort_unstable();
    let mut reach = match ivs.first() {
        None => return true,
        Some(&(_, r)) => r,
    };
    for &(l, r) in &ivs[1..] {
        if l > reach {
            return false;
        }
        reach = reach.max(r);
    }
    true
}

/// Removes the member of the connected set `s` with the largest left endpoint
/// and reports whether the rest is still connected.
pub fn max_index_removal_check(rep: &IntervalRepresentation, s: &[usize]) -> Result<bool, IntervalSolveError> {
    let rep = rep.normalize();
    if let Some(&v) = s.iter().find(|&&v| v >= rep.len()) {
        return Err(IntervalSolveError::InvalidVertex(v));
    }
    let mut ivs: Vec<(i64, i64)> = s.iter().map(|&v| (rep.intervals()[v].left, rep.intervals()[v].right)).collect();
    if ivs.is_empty() {
        return Err(IntervalSolveError::EmptySet);
    }
    if !intervals_connected(ivs.clone()) {
        return Err(IntervalSolveError::NotConnected);
    }
    ivs.sort_unstable();
    ivs.pop();
    Ok(intervals_connected(ivs))
}
