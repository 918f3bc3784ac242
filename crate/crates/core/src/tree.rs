//! Balanced connected subtrees of trees and paths.
//!
//! The tree is rooted at vertex 0 and binarized: a vertex with children
//! `c_1..c_p`, `p >= 3`, keeps `c_1` and hangs the rest off a chain of
//! `p - 2` uncolored nodes, and a vertex with one child gets an uncolored
//! leaf as its second child. For every node the table stores, per balance `d`,
//! the largest weight of a connected set rooted at that node with balance `d`
//! (or of the empty set when `d = 0`).

use thiserror::Error;

use crate::graph::{BicoloredGraph, Color, Measure, SolveResult};

/// Strictly below every attainable table value.
pub const NEG: i64 = i64::MIN / 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not a path")]
    NotAPath,
    #[error("root {0} is not a vertex")]
    BadRoot(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinaryNode {
    /// Original vertex, or `None` for inserted uncolored nodes.
    pub vertex: Option<usize>,
    pub color: Color,
    pub weight: u64,
    pub children: Option<[usize; 2]>,
}

impl BinaryNode {
    fn delta(&self) -> i64 {
        self.color.sign() * self.weight as i64
    }
}

/// Binarized rooted tree. Nodes are stored so that children come before their
/// parent; the root is the last node.
#[derive(Clone, Debug)]
pub struct BinaryRootedTree {
    nodes: Vec<BinaryNode>,
    /// Number of colored nodes in each node's subtree.
    colored: Vec<usize>,
}

impl BinaryRootedTree {
    pub fn nodes(&self) -> &[BinaryNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn colored_size(&self, node: usize) -> usize {
        self.colored[node]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Binarizes the tree `g` rooted at `root`. Weights are carried over (use
/// unit weights for the cardinality problem).
pub fn binarize(g: &BicoloredGraph, root: usize, measure: Measure) -> Result<BinaryRootedTree, TreeError> {
    if !g.is_tree() {
        return Err(TreeError::NotATree);
    }
    if root >= g.len() {
        return Err(TreeError::BadRoot(root));
    }
    let n = g.len();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in g.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                stack.push(w);
            }
        }
    }

    let weight = |v: usize| match measure {
        Measure::Cardinality => 1,
        Measure::Weight => g.weight(v),
    };
    let mut nodes: Vec<BinaryNode> = Vec::with_capacity(2 * n);
    let mut colored: Vec<usize> = Vec::with_capacity(2 * n);
    let mut node_of = vec![usize::MAX; n];
    let uncolored = |children: Option<[usize; 2]>| BinaryNode {
        vertex: None,
        color: Color::Uncolored,
        weight: 0,
        children,
    };
    let push = |nodes: &mut Vec<BinaryNode>, colored: &mut Vec<usize>, node: BinaryNode| {
        let own = usize::from(node.color != Color::Uncolored);
        let below = node.children.map_or(0, |[l, r]| colored[l] + colored[r]);
        nodes.push(node);
        colored.push(own + below);
        nodes.len() - 1
    };

    for &v in order.iter().rev() {
        let kids: Vec<usize> = g
            .neighbors(v)
            .iter()
            .filter(|&&w| parent[w] == v && w != root)
            .map(|&w| node_of[w])
            .collect();
        let children = match kids.len() {
            0 => None,
            1 => {
                let pad = push(&mut nodes, &mut colored, uncolored(None));
                Some([kids[0], pad])
            }
            2 => Some([kids[0], kids[1]]),
            p => {
                // Chain u_1..u_{p-2}; u_{p-2} holds the last two children.
                let mut tail = push(&mut nodes, &mut colored, uncolored(Some([kids[p - 2], kids[p - 1]])));
                for i in (1..p - 2).rev() {
                    tail = push(&mut nodes, &mut colored, uncolored(Some([kids[i], tail])));
                }
                Some([kids[0], tail])
            }
        };
        node_of[v] = push(
            &mut nodes,
            &mut colored,
            BinaryNode {
                vertex: Some(v),
                color: g.color(v),
                weight: weight(v),
                children,
            },
        );
    }
    Ok(BinaryRootedTree { nodes, colored })
}

/// Per-node table over balances `-neg..=pos`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpTable {
    neg: i64,
    values: Vec<i64>,
}

impl DpTable {
    /// Only the empty set: value 0 at balance 0.
    pub fn empty_only() -> Self {
        Self { neg: 0, values: vec![0] }
    }

    pub fn min_balance(&self) -> i64 {
        -self.neg
    }

    pub fn max_balance(&self) -> i64 {
        self.values.len() as i64 - 1 - self.neg
    }

    /// The stored value, or `None` when no set has balance `d`.
    pub fn get(&self, d: i64) -> Option<i64> {
        let i = d + self.neg;
        if i < 0 || i >= self.values.len() as i64 {
            return None;
        }
        Some(self.values[i as usize]).filter(|&x| x > NEG)
    }

    fn raw(&self, d: i64) -> i64 {
        self.get(d).unwrap_or(NEG)
    }

    /// Finite entries as `(balance, value)` pairs.
    pub fn entries(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > NEG)
            .map(move |(i, &x)| (i as i64 - self.neg, x))
    }
}

/// Combines two child tables at a node contributing `delta` to the balance and
/// `weight` to the value. Runs in time proportional to the product of the two
/// child table widths.
pub fn merge_children(left: &DpTable, right: &DpTable, delta: i64, weight: u64) -> DpTable {
    let w = weight as i64;
    let neg = left.neg + right.neg + (-delta).max(0);
    let pos = left.max_balance() + right.max_balance() + delta.max(0);
    let mut values = vec![NEG; (neg + pos + 1) as usize];
    for (i, &a) in left.values.iter().enumerate() {
        if a <= NEG {
            continue;
        }
        // Index in the output for d_l + d_r + delta where d_r = j - right.neg.
        let base = i as i64 - left.neg - right.neg + delta + neg;
        for (j, &b) in right.values.iter().enumerate() {
            if b <= NEG {
                continue;
            }
            let slot = &mut values[(base + j as i64) as usize];
            *slot = (*slot).max(a + b + w);
        }
    }
    let zero = &mut values[neg as usize];
    *zero = (*zero).max(0);
    DpTable { neg, values }
}

fn leaf_table(node: &BinaryNode) -> DpTable {
    merge_children(&DpTable::empty_only(), &DpTable::empty_only(), node.delta(), node.weight)
}

/// All node tables of a tree, with traceback.
#[derive(Clone, Debug)]
pub struct TreeDp {
    tree: BinaryRootedTree,
    tables: Vec<DpTable>,
    measure: Measure,
}

impl TreeDp {
    pub fn compute(g: &BicoloredGraph, measure: Measure) -> Result<Self, TreeError> {
        let tree = binarize(g, 0, measure)?;
        let mut tables: Vec<DpTable> = Vec::with_capacity(tree.len());
        for node in &tree.nodes {
            let table = match node.children {
                None => leaf_table(node),
                Some([l, r]) => merge_children(&tables[l], &tables[r], node.delta(), node.weight),
            };
            tables.push(table);
        }
        Ok(Self { tree, tables, measure })
    }

    pub fn tree(&self) -> &BinaryRootedTree {
        &self.tree
    }

    pub fn table(&self, node: usize) -> &DpTable {
        &self.tables[node]
    }

    /// Original vertices of a set realizing the table entry `(node, d)`.
    /// Among several optimal splits the one with the smallest left balance is
    /// followed.
    pub fn traceback(&self, node: usize, d: i64) -> Option<Vec<usize>> {
        let value = self.tables[node].get(d)?;
        let mut out = Vec::new();
        let mut stack = vec![(node, d, value)];
        while let Some((x, d, value)) = stack.pop() {
            if d == 0 && value == 0 {
                continue;
            }
            let n = &self.tree.nodes[x];
            if let Some(v) = n.vertex {
                out.push(v);
            }
            let Some([l, r]) = n.children else { continue };
            let (tl, tr) = (&self.tables[l], &self.tables[r]);
            let rest = value - n.weight as i64;
            let target = d - n.delta();
            let (dl, a, b) = tl
                .entries()
                .find_map(|(dl, a)| {
                    let b = tr.raw(target - dl);
                    (b > NEG && a + b == rest).then_some((dl, a, b))
                })
                .expect("table entries are realizable");
            stack.push((r, target - dl, b));
            stack.push((l, dl, a));
        }
        Some(out)
    }

    /// Maximum of `bcs(v, 0)` over nodes that are original vertices.
    pub fn best(&self) -> SolveResult {
        let mut best: Option<(i64, usize)> = None;
        for (x, node) in self.tree.nodes.iter().enumerate() {
            if node.vertex.is_none() {
                continue;
            }
            let value = self.tables[x].raw(0);
            if value > 0 && best.is_none_or(|(b, _)| value > b) {
                best = Some((value, x));
            }
        }
        match best {
            None => SolveResult::empty(self.measure),
            Some((value, x)) => SolveResult {
                objective: value as u64,
                witness: {
                    let mut w = self.traceback(x, 0).expect("finite entry");
                    w.sort_unstable();
                    w
                },
                measure: self.measure,
            },
        }
    }
}

/// Maximum balanced connected subtree by vertex count.
pub fn solve_tree_bcs(g: &BicoloredGraph) -> Result<SolveResult, TreeError> {
    Ok(TreeDp::compute(g, Measure::Cardinality)?.best())
}

/// Maximum balanced connected subtree by weight.
pub fn solve_tree_wbcs(g: &BicoloredGraph) -> Result<SolveResult, TreeError> {
    Ok(TreeDp::compute(g, Measure::Weight)?.best())
}

/// Linear-time solver for paths: the longest window whose prefix balances at
/// both ends coincide.
pub fn solve_path_bcs(g: &BicoloredGraph) -> Result<SolveResult, TreeError> {
    let order = g.path_order().ok_or(TreeError::NotAPath)?;
    let n = order.len();
    // left[pref + n] = smallest prefix length with that balance.
    let mut left = vec![usize::MAX; 2 * n + 1];
    left[n] = 0;
    let mut pref = 0i64;
    let mut best = (0usize, 0usize, 0usize);
    for (i, &v) in order.iter().enumerate() {
        pref += g.color(v).sign();
        let len = i + 1;
        let slot = &mut left[(pref + n as i64) as usize];
        if *slot == usize::MAX {
            *slot = len;
        } else if len - *slot > best.0 {
            best = (len - *slot, *slot, len);
        }
    }
    let (len, start, end) = best;
    // Sort the window by marking, keeping the solver linear.
    let mut inside = vec![false; n];
    for &v in &order[start..end] {
        inside[v] = true;
    }
    Ok(SolveResult {
        objective: len as u64,
        witness: (0..n).filter(|&v| inside[v]).collect(),
        measure: Measure::Cardinality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Color::{Blue as B, Red as R};
    use crate::oracle::brute_force_bcs;

    fn tree(colors: &[Color], edges: &[(usize, usize)]) -> BicoloredGraph {
        BicoloredGraph::unweighted(colors.to_vec(), edges.iter().copied()).unwrap()
    }

    #[test]
    fn four_children_get_two_path_nodes() {
        let g = tree(&[B, R, R, R, R], &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let t = binarize(&g, 0, Measure::Cardinality).unwrap();
        let inserted = t.nodes().iter().filter(|n| n.vertex.is_none()).count();
        assert_eq!(inserted, 2);
        assert_eq!(t.colored_size(t.root()), 5);
    }

    #[test]
    fn one_child_nodes_are_padded() {
        let g = tree(&[B, R, B], &[(0, 1), (1, 2)]);
        let t = binarize(&g, 0, Measure::Cardinality).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.nodes().iter().filter(|n| n.vertex.is_none()).count(), 2);
    }

    #[test]
    fn merge_examples() {
        let e = DpTable::empty_only();
        let leaf = merge_children(&e, &e, 1, 1);
        assert_eq!((leaf.get(1), leaf.get(0)), (Some(1), Some(0)));
        let red = merge_children(&e, &e, -1, 1);
        let both = merge_children(&red, &e, 1, 1);
        assert_eq!(both.get(0), Some(2));
        assert_eq!(merge_children(&red, &leaf, 1, 1), merge_children(&leaf, &red, 1, 1));
    }

    #[test]
    fn small_trees() {
        assert_eq!(solve_tree_bcs(&tree(&[R], &[])).unwrap().objective, 0);
        assert_eq!(solve_tree_bcs(&tree(&[B, R], &[(0, 1)])).unwrap().objective, 2);
        let star = tree(&[B, R, R, R], &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(
            solve_tree_bcs(&star).unwrap().objective,
            brute_force_bcs(&star).unwrap().objective
        );
        let cycle = tree(&[B, R, B], &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(solve_tree_bcs(&cycle), Err(TreeError::NotATree));
    }

    #[test]
    fn path_examples() {
        let p = tree(&[B, R, R, B, R], &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let r = solve_path_bcs(&p).unwrap();
        assert_eq!(r.objective, 4);
        assert_eq!(r.witness, vec![0, 1, 2, 3]);
        let alt = tree(&[B, R, B, R, B, R], &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(solve_path_bcs(&alt).unwrap().objective, 6);
        let blues = tree(&[B, B, B], &[(0, 1), (1, 2)]);
        assert_eq!(solve_path_bcs(&blues).unwrap(), SolveResult::empty(Measure::Cardinality));
        let star = tree(&[B, R, R, R], &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(solve_path_bcs(&star), Err(TreeError::NotAPath));
    }

    #[test]
    fn subset_sum_star_weighted() {
        let g = BicoloredGraph::new(vec![B, R, R, R], Some(vec![3, 1, 2, 3]), [(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = solve_tree_wbcs(&g).unwrap();
        assert_eq!(r.objective, 6);
        assert!(crate::graph::is_valid_witness(&g, &r));
    }
}
