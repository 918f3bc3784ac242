//! Bicolored graphs, balance accounting and witness validation.
//!
//! Every solver in the crate works on a [`BicoloredGraph`]: a simple undirected
//! graph whose vertices carry a [`Color`] and a positive integer weight. Vertex
//! ids are dense and 0-based; file formats translate at the I/O boundary.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Upper bound on the total vertex weight so that every balance fits in `i64`.
pub const MAX_TOTAL_WEIGHT: u64 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Blue,
    Red,
    /// Only produced by solver-internal derived structures (padding nodes).
    Uncolored,
}

impl Color {
    /// `+1` for blue, `-1` for red, `0` for uncolored.
    #[inline]
    pub fn sign(self) -> i64 {
        match self {
            Color::Blue => 1,
            Color::Red => -1,
            Color::Uncolored => 0,
        }
    }

    #[inline]
    pub fn swapped(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
            Color::Uncolored => Color::Uncolored,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Blue => "b",
            Color::Red => "r",
            Color::Uncolored => "u",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} does not exist")]
    InvalidVertex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} has weight 0; weights must be positive")]
    ZeroWeight(usize),
    #[error("expected {expected} weights, got {actual}")]
    WeightCount { expected: usize, actual: usize },
    #[error("total vertex weight exceeds 2^62")]
    WeightOverflow,
}

/// A simple undirected graph with colored, weighted vertices.
///
/// Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicoloredGraph {
    colors: Vec<Color>,
    weights: Vec<u64>,
    /// Sorted neighbor lists.
    adjacency: Vec<Vec<usize>>,
    /// Edges as `(min, max)` pairs in insertion order.
    edges: Vec<(usize, usize)>,
}

impl BicoloredGraph {
    /// Builds a graph, rejecting self-loops, duplicate edges, dangling endpoints
    /// and non-positive weights. `weights = None` means unit weights.
    pub fn new<I>(colors: Vec<Color>, weights: Option<Vec<u64>>, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = colors.len();
        let weights = match weights {
            Some(w) if w.len() != n => {
                return Err(GraphError::WeightCount {
                    expected: n,
                    actual: w.len(),
                })
            }
            Some(w) => w,
            None => vec![1; n],
        };
        let mut total: u64 = 0;
        for (v, &w) in weights.iter().enumerate() {
            if w == 0 {
                return Err(GraphError::ZeroWeight(v));
            }
            total = total.checked_add(w).ok_or(GraphError::WeightOverflow)?;
        }
        if total > MAX_TOTAL_WEIGHT {
            return Err(GraphError::WeightOverflow);
        }

        let mut adjacency = vec![Vec::new(); n];
        let mut edge_list = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::InvalidVertex(u));
            }
            if v >= n {
                return Err(GraphError::InvalidVertex(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            edge_list.push((u.min(v), u.max(v)));
        }
        for list in adjacency.iter_mut() {
            list.sort_unstable();
        }
        for (u, list) in adjacency.iter().enumerate() {
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self {
            colors,
            weights,
            adjacency,
            edges: edge_list,
        })
    }

    /// Unit-weight graph.
    pub fn unweighted<I>(colors: Vec<Color>, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::new(colors, None, edges)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    #[inline]
    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    #[inline]
    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.len() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn count_color(&self, color: Color) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    pub fn vertices_of(&self, color: Color) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.colors[v] == color).collect()
    }

    fn check_ids(&self, set: &[usize]) -> Result<(), GraphError> {
        match set.iter().find(|&&v| v >= self.len()) {
            Some(&v) => Err(GraphError::InvalidVertex(v)),
            None => Ok(()),
        }
    }

    /// Whether the subgraph induced by `set` is connected. The empty set counts
    /// as connected.
    pub fn is_connected(&self, set: &[usize]) -> Result<bool, GraphError> {
        self.check_ids(set)?;
        let Some(&start) = set.first() else {
            return Ok(true);
        };
        let mut inside = vec![false; self.len()];
        let mut distinct = 0;
        for &v in set {
            if !inside[v] {
                inside[v] = true;
                distinct += 1;
            }
        }
        let mut seen = vec![false; self.len()];
        seen[start] = true;
        let mut reached = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(reached == distinct)
    }

    /// Weighted balance: blue weight minus red weight. Uncolored vertices
    /// contribute nothing. With unit weights this is the blue/red count difference.
    pub fn balance(&self, set: &[usize]) -> Result<i64, GraphError> {
        self.check_ids(set)?;
        Ok(set
            .iter()
            .map(|&v| self.colors[v].sign() * self.weights[v] as i64)
            .sum())
    }

    /// Blue count minus red count, ignoring weights.
    pub fn cardinality_balance(&self, set: &[usize]) -> Result<i64, GraphError> {
        self.check_ids(set)?;
        Ok(set.iter().map(|&v| self.colors[v].sign()).sum())
    }

    /// Same structure and weights with blue and red exchanged.
    pub fn swap_colors(&self) -> Self {
        Self {
            colors: self.colors.iter().map(|c| c.swapped()).collect(),
            ..self.clone()
        }
    }

    /// Connected component labels (`usize` component index per vertex).
    pub fn components(&self) -> (usize, Vec<usize>) {
        let n = self.len();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adjacency[u] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.edge_count() + 1 == self.len() && self.components().0 == 1
    }

    /// The vertex order along the path if the graph is a path, starting from the
    /// lower-id endpoint.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        let n = self.len();
        // n - 1 edges, degrees <= 2 and a walk covering every vertex make a path.
        if n == 0 || self.edge_count() + 1 != n || self.adjacency.iter().any(|a| a.len() > 2) {
            return None;
        }
        let start = (0..n).find(|&v| self.degree(v) <= 1)?;
        let mut order = Vec::with_capacity(n);
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            order.push(cur);
            match self.adjacency[cur].iter().find(|&&w| w != prev) {
                Some(&next) if order.len() < n => {
                    prev = cur;
                    cur = next;
                }
                _ => break,
            }
        }
        (order.len() == n).then_some(order)
    }
}

/// What a [`SolveResult`] objective measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    /// Vertex count; balance counts blue and red vertices (BCS).
    Cardinality,
    /// Total vertex weight; balance compares color weights (WBCS).
    Weight,
}

/// Optimal objective together with a witness vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub objective: u64,
    /// Sorted vertex ids; empty when the optimum is 0.
    pub witness: Vec<usize>,
    pub measure: Measure,
}

impl SolveResult {
    pub fn empty(measure: Measure) -> Self {
        Self {
            objective: 0,
            witness: Vec::new(),
            measure,
        }
    }

    /// Builds a result from a witness, computing the objective from the graph.
    pub fn from_witness(g: &BicoloredGraph, mut witness: Vec<usize>, measure: Measure) -> Self {
        witness.sort_unstable();
        witness.dedup();
        let objective = match measure {
            Measure::Cardinality => witness.len() as u64,
            Measure::Weight => witness.iter().map(|&v| g.weight(v)).sum(),
        };
        Self {
            objective,
            witness,
            measure,
        }
    }
}

/// Reason a witness failed validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("witness contains unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("witness lists vertex {0} twice")]
    DuplicateVertex(usize),
    #[error("witness is not connected")]
    Disconnected,
    #[error("witness has balance {0}")]
    Unbalanced(i64),
    #[error("objective {claimed} does not match witness value {actual}")]
    ObjectiveMismatch { claimed: u64, actual: u64 },
}

impl WitnessError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            WitnessError::UnknownVertex(_) => "unknown-vertex",
            WitnessError::DuplicateVertex(_) => "duplicate-vertex",
            WitnessError::Disconnected => "disconnected",
            WitnessError::Unbalanced(_) => "unbalanced",
            WitnessError::ObjectiveMismatch { .. } => "objective-mismatch",
        }
    }
}

/// Checks that the witness is connected, balanced under the result's measure,
/// and worth exactly the claimed objective.
pub fn validate_witness(g: &BicoloredGraph, r: &SolveResult) -> Result<(), WitnessError> {
    let mut seen = vec![false; g.len()];
    for &v in &r.witness {
        if v >= g.len() {
            return Err(WitnessError::UnknownVertex(v));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(WitnessError::DuplicateVertex(v));
        }
    }
    if !g.is_connected(&r.witness).expect("ids checked") {
        return Err(WitnessError::Disconnected);
    }
    let (balance, actual) = match r.measure {
        Measure::Cardinality => (
            g.cardinality_balance(&r.witness).expect("ids checked"),
            r.witness.len() as u64,
        ),
        Measure::Weight => (
            g.balance(&r.witness).expect("ids checked"),
            r.witness.iter().map(|&v| g.weight(v)).sum(),
        ),
    };
    if balance != 0 {
        return Err(WitnessError::Unbalanced(balance));
    }
    if actual != r.objective {
        return Err(WitnessError::ObjectiveMismatch {
            claimed: r.objective,
            actual,
        });
    }
    Ok(())
}

pub fn is_valid_witness(g: &BicoloredGraph, r: &SolveResult) -> bool {
    validate_witness(g, r).is_ok()
}
