//! Tree decompositions and their validation.

use thiserror::Error;

use crate::graph::BicoloredGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("decomposition has no bags")]
    NoBags,
    #[error("bag {bag} lists vertex {vertex} which is not in the graph")]
    VertexOutOfRange { bag: usize, vertex: usize },
    #[error("bag {bag} lists vertex {vertex} twice")]
    RepeatedVertex { bag: usize, vertex: usize },
    #[error("decomposition edge refers to bag {0} which does not exist")]
    BagOutOfRange(usize),
    #[error("decomposition edges do not form a tree")]
    NotATree,
    #[error("vertex {0} is not covered by any bag")]
    VertexNotCovered(usize),
    #[error("edge {{{0}, {1}}} is not contained in any bag")]
    EdgeNotCovered(usize, usize),
    #[error("bags containing vertex {0} do not induce a subtree")]
    NotConnected(usize),
}

/// Bags over vertex ids plus the edges of the decomposition tree. Bag 0 is the
/// root when a rooted view is needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Bags are sorted and stored as given; use [`validate_tree_decomposition`]
    /// to check them against a graph.
    pub fn new(mut bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        for bag in bags.iter_mut() {
            bag.sort_unstable();
        }
        Self { bags, edges }
    }

    /// A single bag holding every vertex.
    pub fn trivial(n: usize) -> Self {
        Self::new(vec![(0..n).collect()], Vec::new())
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Largest bag size minus one (0 for a decomposition of empty bags).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn bag_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// `(parent, preorder)` of the tree rooted at bag 0. Assumes a valid tree.
    pub fn rooted(&self) -> (Vec<Option<usize>>, Vec<usize>) {
        let adj = self.bag_adjacency();
        let mut parent = vec![None; self.bags.len()];
        let mut order = Vec::with_capacity(self.bags.len());
        let mut seen = vec![false; self.bags.len()];
        if self.bags.is_empty() {
            return (parent, order);
        }
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(b) = stack.pop() {
            order.push(b);
            for &c in &adj[b] {
                if !seen[c] {
                    seen[c] = true;
                    parent[c] = Some(b);
                    stack.push(c);
                }
            }
        }
        (parent, order)
    }
}

/// Checks the tree shape and the three decomposition properties: every vertex
/// is covered, every edge lies in a bag, and the bags holding each vertex form
/// a connected subtree.
pub fn validate_tree_decomposition(g: &BicoloredGraph, td: &TreeDecomposition) -> Result<(), DecompositionError> {
    let nb = td.bags.len();
    if nb == 0 {
        return Err(DecompositionError::NoBags);
    }
    for (b, bag) in td.bags.iter().enumerate() {
        for w in bag.windows(2) {
            if w[0] == w[1] {
                return Err(DecompositionError::RepeatedVertex { bag: b, vertex: w[0] });
            }
        }
        if let Some(&v) = bag.iter().find(|&&v| v >= g.len()) {
            return Err(DecompositionError::VertexOutOfRange { bag: b, vertex: v });
        }
    }
    for &(a, b) in &td.edges {
        for x in [a, b] {
            if x >= nb {
                return Err(DecompositionError::BagOutOfRange(x));
            }
        }
    }
    if td.edges.len() + 1 != nb {
        return Err(DecompositionError::NotATree);
    }
    let (_, order) = td.rooted();
    if order.len() != nb {
        return Err(DecompositionError::NotATree);
    }

    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.len()];
    for (b, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            holders[v].push(b);
        }
    }
    if let Some(v) = holders.iter().position(Vec::is_empty) {
        return Err(DecompositionError::VertexNotCovered(v));
    }
    for &(u, v) in g.edges() {
        let covered = holders[u]
            .iter()
            .any(|&b| td.bags[b].binary_search(&v).is_ok());
        if !covered {
            return Err(DecompositionError::EdgeNotCovered(u, v));
        }
    }
    // In a tree, a node subset of size k is connected iff it spans k - 1 tree edges.
    let mut internal_edges = vec![0usize; g.len()];
    for &(a, b) in &td.edges {
        for &v in &td.bags[a] {
            if td.bags[b].binary_search(&v).is_ok() {
                internal_edges[v] += 1;
            }
        }
    }
    for v in 0..g.len() {
        if internal_edges[v] + 1 != holders[v].len() {
            return Err(DecompositionError::NotConnected(v));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Color;

    fn path(n: usize) -> BicoloredGraph {
        BicoloredGraph::unweighted(vec![Color::Blue; n], (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn path_decomposition(n: usize) -> TreeDecomposition {
        TreeDecomposition::new(
            (0..n - 1).map(|i| vec![i, i + 1]).collect(),
            (0..n - 2).map(|i| (i, i + 1)).collect(),
        )
    }

    #[test]
    fn single_bag_is_valid() {
        let g = path(5);
        assert_eq!(validate_tree_decomposition(&g, &TreeDecomposition::trivial(5)), Ok(()));
    }

    #[test]
    fn chained_path_bags_have_width_one() {
        let g = path(6);
        let td = path_decomposition(6);
        assert_eq!(validate_tree_decomposition(&g, &td), Ok(()));
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn removing_a_bag_uncovers_its_edge() {
        let g = path(6);
        let td = path_decomposition(6);
        // Drop the middle bag {2, 3} and splice its neighbors together.
        let mut bags = td.bags().to_vec();
        bags.remove(2);
        let edges = (0..bags.len() - 1).map(|i| (i, i + 1)).collect();
        let broken = TreeDecomposition::new(bags, edges);
        assert_eq!(
            validate_tree_decomposition(&g, &broken),
            Err(DecompositionError::EdgeNotCovered(2, 3))
        );
    }

    #[test]
    fn disconnected_occurrences_are_reported() {
        let g = path(3);
        let td = TreeDecomposition::new(
            vec![vec![0, 1], vec![2], vec![1, 2]],
            vec![(0, 1), (1, 2)],
        );
        assert_eq!(
            validate_tree_decomposition(&g, &td),
            Err(DecompositionError::NotConnected(1))
        );
    }

    #[test]
    fn cyclic_bag_graph_is_not_a_tree() {
        let g = path(3);
        let td = TreeDecomposition::new(
            vec![vec![0, 1], vec![1, 2], vec![1]],
            vec![(0, 1), (1, 2), (2, 0)],
        );
        assert_eq!(validate_tree_decomposition(&g, &td), Err(DecompositionError::NotATree));
    }
}
