//! Balanced connected subgraphs guided by a tree decomposition.
//!
//! A state at a node with bag `X` records which bag vertices are in the
//! partial solution `U` (a subset `S`), how `S` is split into the components
//! of `G[U]`, and the balance of `U`. Every component of a stored `U` meets
//! `S`; a component that loses its last bag vertex at a forget node is a
//! finished candidate and leaves the table.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::graph::{BicoloredGraph, Measure, SolveResult};
use crate::io::{validate_tree_decomposition, DecompositionError, TreeDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreewidthError {
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error("elimination order is not a permutation of the vertices")]
    BadOrder,
    #[error("decomposition width {0} exceeds the supported maximum {MAX_WIDTH}")]
    TooWide(usize),
}

/// Widest decomposition the state encoding supports.
pub const MAX_WIDTH: usize = 100;

/// Elimination ordering that repeatedly removes a vertex of minimum degree
/// (smallest id on ties) and turns its neighborhood into a clique.
pub fn min_degree_order(g: &BicoloredGraph) -> Vec<usize> {
    let n = g.len();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut by_degree: BTreeSet<(usize, usize)> = (0..n).map(|v| (adj[v].len(), v)).collect();
    let mut order = Vec::with_capacity(n);
    while let Some((_, v)) = by_degree.pop_first() {
        order.push(v);
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for &u in &nbrs {
            by_degree.remove(&(adj[u].len(), u));
            adj[u].remove(&v);
        }
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &u in &nbrs {
            by_degree.insert((adj[u].len(), u));
        }
        adj[v].clear();
    }
    order
}

/// Decomposition induced by eliminating vertices in `order`: one bag per
/// vertex holding it and its later neighbors in the filled graph, attached to
/// the bag of the earliest-eliminated of those neighbors.
pub fn decomposition_from_elimination_order(
    g: &BicoloredGraph,
    order: &[usize],
) -> Result<TreeDecomposition, TreewidthError> {
    let n = g.len();
    let mut position = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return Err(TreewidthError::BadOrder);
        }
        position[v] = i;
    }
    if order.len() != n {
        return Err(TreewidthError::BadOrder);
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = adj[v].iter().copied().filter(|&u| position[u] > i).collect();
        for (a_i, &a) in later.iter().enumerate() {
            for &b in &later[a_i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        match later.iter().map(|&u| position[u]).min() {
            Some(p) => edges.push((i, p)),
            None => roots.push(i),
        }
        let mut bag = later;
        bag.push(v);
        bags.push(bag);
    }
    // One tree per connected component; chain their roots.
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    Ok(TreeDecomposition::new(bags, edges))
}

/// Min-degree heuristic decomposition.
pub fn build_heuristic_decomposition(g: &BicoloredGraph) -> TreeDecomposition {
    decomposition_from_elimination_order(g, &min_degree_order(g)).expect("order is a permutation")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce { vertex: usize, child: usize },
    Forget { vertex: usize, child: usize },
    Join { left: usize, right: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted bag.
    pub bag: Vec<usize>,
}

/// Leaf / introduce / forget / join refinement of a decomposition. Children
/// precede parents; the last node is the root and has an empty bag.
#[derive(Clone, Debug)]
pub struct NiceDecomposition {
    nodes: Vec<NiceNode>,
}

impl NiceDecomposition {
    /// Assumes `td` is a valid decomposition.
    pub fn from_decomposition(td: &TreeDecomposition) -> Self {
        let mut nodes: Vec<NiceNode> = Vec::new();
        let (parent, preorder) = td.rooted();
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); td.len()];
        for &b in &preorder {
            if let Some(p) = parent[b] {
                children[p].push(b);
            }
        }
        let mut top = vec![usize::MAX; td.len()];
        for &b in preorder.iter().rev() {
            let target = &td.bags()[b];
            let mut branches: Vec<usize> = children[b]
                .iter()
                .map(|&c| morph(&mut nodes, top[c], target))
                .collect();
            if branches.is_empty() {
                let leaf = nodes.len();
                nodes.push(NiceNode {
                    kind: NiceKind::Leaf,
                    bag: Vec::new(),
                });
                branches.push(morph(&mut nodes, leaf, target));
            }
            let mut acc = branches[0];
            for &other in &branches[1..] {
                nodes.push(NiceNode {
                    kind: NiceKind::Join { left: acc, right: other },
                    bag: target.clone(),
                });
                acc = nodes.len() - 1;
            }
            top[b] = acc;
        }
        if !td.is_empty() {
            morph(&mut nodes, top[0], &[]);
        }
        Self { nodes }
    }

    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    /// All vertices in bags of the subtree below each node.
    pub fn subtree_vertices(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let mut set: BTreeSet<usize> = node.bag.iter().copied().collect();
            match node.kind {
                NiceKind::Leaf => {}
                NiceKind::Introduce { child, .. } | NiceKind::Forget { child, .. } => {
                    set.extend(&out[child]);
                }
                NiceKind::Join { left, right } => {
                    set.extend(&out[left]);
                    set.extend(&out[right]);
                }
            }
            out.push(set.into_iter().collect());
        }
        out
    }
}

/// Appends forget then introduce nodes turning the bag of `from` into
/// `target`; returns the last node.
fn morph(nodes: &mut Vec<NiceNode>, from: usize, target: &[usize]) -> usize {
    let mut cur = from;
    let mut bag = nodes[from].bag.clone();
    let gone: Vec<usize> = bag.iter().copied().filter(|v| target.binary_search(v).is_err()).collect();
    for v in gone {
        bag.retain(|&u| u != v);
        nodes.push(NiceNode {
            kind: NiceKind::Forget { vertex: v, child: cur },
            bag: bag.clone(),
        });
        cur = nodes.len() - 1;
    }
    for &v in target {
        if let Err(at) = bag.binary_search(&v) {
            bag.insert(at, v);
            nodes.push(NiceNode {
                kind: NiceKind::Introduce { vertex: v, child: cur },
                bag: bag.clone(),
            });
            cur = nodes.len() - 1;
        }
    }
    cur
}

/// Block labels per bag position (`0` = not in the solution), numbered by
/// first appearance, plus the balance.
pub type StateKey = (Vec<u8>, i64);

#[derive(Clone, Copy, Debug)]
enum Back {
    None,
    One(usize),
    Two(usize, usize),
}

#[derive(Clone, Debug)]
struct State {
    key: StateKey,
    value: u32,
    back: Back,
}

#[derive(Default, Clone, Debug)]
struct Table {
    states: Vec<State>,
    index: HashMap<StateKey, usize>,
}

impl Table {
    fn offer(&mut self, key: StateKey, value: u32, back: Back) {
        match self.index.get(&key) {
            Some(&i) => {
                if value > self.states[i].value {
                    self.states[i].value = value;
                    self.states[i].back = back;
                }
            }
            None => {
                self.index.insert(key.clone(), self.states.len());
                self.states.push(State { key, value, back });
            }
        }
    }
}

fn canonical(labels: &mut [u8]) {
    let mut map = [0u8; 256];
    let mut next = 0u8;
    for l in labels.iter_mut() {
        if *l == 0 {
            continue;
        }
        if map[*l as usize] == 0 {
            next += 1;
            map[*l as usize] = next;
        }
        *l = map[*l as usize];
    }
}

fn find(parent: &mut [u8], x: u8) -> u8 {
    let mut r = x;
    while parent[r as usize] != r {
        r = parent[r as usize];
    }
    let mut y = x;
    while parent[y as usize] != r {
        let next = parent[y as usize];
        parent[y as usize] = r;
        y = next;
    }
    r
}

/// The full state tables over a nice decomposition.
#[derive(Clone, Debug)]
pub struct TreewidthDp {
    nice: NiceDecomposition,
    tables: Vec<Table>,
    /// Best closed component: `(size, node, child state)`.
    best: Option<(u32, usize, usize)>,
}

impl TreewidthDp {
    pub fn run(g: &BicoloredGraph, nice: NiceDecomposition) -> Self {
        let mut tables: Vec<Table> = Vec::with_capacity(nice.nodes.len());
        let mut best: Option<(u32, usize, usize)> = None;
        for node in &nice.nodes {
            let mut table = Table::default();
            match node.kind {
                NiceKind::Leaf => table.offer((Vec::new(), 0), 0, Back::None),
                NiceKind::Introduce { vertex, child } => {
                    let at = node.bag.binary_search(&vertex).expect("introduced vertex in bag");
                    let is_neighbor: Vec<bool> = node.bag.iter().map(|&u| g.has_edge(u, vertex)).collect();
                    for (i, s) in tables[child].states.iter().enumerate() {
                        let (labels, d) = &s.key;
                        let mut out = labels.clone();
                        out.insert(at, 0);
                        table.offer((out.clone(), *d), s.value, Back::One(i));
                        // Joining v merges every block holding one of its bag neighbors.
                        let fresh = out.iter().copied().max().unwrap_or(0) + 1;
                        let merged: Vec<u8> = (0..out.len())
                            .filter(|&p| is_neighbor[p] && out[p] != 0)
                            .map(|p| out[p])
                            .collect();
                        for l in out.iter_mut() {
                            if *l != 0 && merged.contains(l) {
                                *l = fresh;
                            }
                        }
                        out[at] = fresh;
                        canonical(&mut out);
                        table.offer((out, d + g.color(vertex).sign()), s.value + 1, Back::One(i));
                    }
                }
                NiceKind::Forget { vertex, child } => {
                    let at = nice.nodes[child].bag.binary_search(&vertex).expect("forgotten vertex in child bag");
                    for (i, s) in tables[child].states.iter().enumerate() {
                        let (labels, d) = &s.key;
                        let l = labels[at];
                        let shared = l != 0 && labels.iter().filter(|&&m| m == l).count() > 1;
                        if l == 0 || shared {
                            let mut out = labels.clone();
                            out.remove(at);
                            canonical(&mut out);
                            table.offer((out, *d), s.value, Back::One(i));
                        } else if labels.iter().all(|&m| m == 0 || m == l)
                            && *d == 0 && best.is_none_or(|(b, _, _)| s.value > b) {
                                best = Some((s.value, child, i));
                            }
                    }
                }
                NiceKind::Join { left, right } => {
                    let bag_balance: Vec<i64> = node.bag.iter().map(|&u| g.color(u).sign()).collect();
                    let mut by_support: HashMap<Vec<bool>, Vec<usize>> = HashMap::new();
                    for (j, s) in tables[right].states.iter().enumerate() {
                        by_support.entry(s.key.0.iter().map(|&l| l != 0).collect()).or_default().push(j);
                    }
                    for (i, a) in tables[left].states.iter().enumerate() {
                        let support: Vec<bool> = a.key.0.iter().map(|&l| l != 0).collect();
                        let Some(partners) = by_support.get(&support) else { continue };
                        let size = support.iter().filter(|&&b| b).count() as u32;
                        let overlap: i64 = (0..support.len()).filter(|&p| support[p]).map(|p| bag_balance[p]).sum();
                        let offset = a.key.0.iter().copied().max().unwrap_or(0);
                        for &j in partners {
                            let b = &tables[right].states[j];
                            let mut parent: Vec<u8> = (0..=offset + b.key.0.iter().copied().max().unwrap_or(0)).collect();
                            for p in 0..support.len() {
                                if support[p] {
                                    let (x, y) = (find(&mut parent, a.key.0[p]), find(&mut parent, offset + b.key.0[p]));
                                    parent[x as usize] = y;
                                }
                            }
                            let mut out: Vec<u8> = a.key.0.iter().map(|&l| if l == 0 { 0 } else { find(&mut parent, l) }).collect();
                            canonical(&mut out);
                            table.offer((out, a.key.1 + b.key.1 - overlap), a.value + b.value - size, Back::Two(i, j));
                        }
                    }
                }
            }
            tables.push(table);
        }
        Self { nice, tables, best }
    }

    pub fn nice(&self) -> &NiceDecomposition {
        &self.nice
    }

    /// Every stored state of a node with its value.
    pub fn states(&self, node: usize) -> impl Iterator<Item = (&StateKey, u32)> + '_ {
        self.tables[node].states.iter().map(|s| (&s.key, s.value))
    }

    /// Number of stored states across all nodes.
    pub fn state_count(&self) -> usize {
        self.tables.iter().map(|t| t.states.len()).sum()
    }

    fn collect(&self, node: usize, state: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![(node, state)];
        while let Some((x, i)) = stack.pop() {
            let s = &self.tables[x].states[i];
            let n = &self.nice.nodes[x];
            match (n.kind, s.back) {
                (NiceKind::Introduce { vertex, child }, Back::One(c)) => {
                    let at = n.bag.binary_search(&vertex).expect("introduced vertex in bag");
                    if s.key.0[at] != 0 {
                        out.push(vertex);
                    }
                    stack.push((child, c));
                }
                (NiceKind::Forget { child, .. }, Back::One(c)) => stack.push((child, c)),
                (NiceKind::Join { left, right }, Back::Two(a, b)) => {
                    stack.push((left, a));
                    stack.push((right, b));
                }
                _ => {}
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Vertex set realizing a stored state.
    pub fn traceback(&self, node: usize, key: &StateKey) -> Option<Vec<usize>> {
        let i = *self.tables[node].index.get(key)?;
        Some(self.collect(node, i))
    }

    pub fn best(&self) -> SolveResult {
        match self.best {
            None => SolveResult::empty(Measure::Cardinality),
            Some((value, node, state)) => {
                let witness = self.collect(node, state);
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

/// Solves with the given decomposition after validating it.
pub fn solve_tw_bcs(g: &BicoloredGraph, td: &TreeDecomposition) -> Result<SolveResult, TreewidthError> {
    if g.is_empty() {
        return Ok(SolveResult::empty(Measure::Cardinality));
    }
    validate_tree_decomposition(g, td)?;
    if td.width() > MAX_WIDTH {
        return Err(TreewidthError::TooWide(td.width()));
    }
    Ok(TreewidthDp::run(g, NiceDecomposition::from_decomposition(td)).best())
}

/// Solves with a min-degree heuristic decomposition.
pub fn solve_tw_bcs_heuristic(g: &BicoloredGraph) -> SolveResult {
    if g.is_empty() {
        return SolveResult::empty(Measure::Cardinality);
    }
    let td = build_heuristic_decomposition(g);
    TreewidthDp::run(g, NiceDecomposition::from_decomposition(&td)).best()
}
