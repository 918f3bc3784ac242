mod common;

use bcs_core::io::{gen_random, Family, GenConfig};
use bcs_core::tree::{binarize, merge_children, DpTable, TreeDp};
use bcs_core::{BicoloredGraph, Color, Measure};
use common::{rng, sweep};
use proptest::prelude::*;
use rand::Rng;

/// Descendants of each vertex when the tree is rooted at 0.
fn subtrees(g: &BicoloredGraph) -> Vec<Vec<usize>> {
    let n = g.len();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![0];
    parent[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &w in g.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
        i += 1;
    }
    let mut sub: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    for &v in order.iter().rev().filter(|&&v| v != 0) {
        let mine = sub[v].clone();
        sub[parent[v]].extend(mine);
    }
    sub
}

fn balance(g: &BicoloredGraph, set: &[usize]) -> i64 {
    set.iter().map(|&v| g.color(v).sign()).sum()
}

#[test]
fn binarized_trees_keep_vertices_and_are_binary() {
    let mut r = rng(1);
    for _ in 0..50 {
        let g = gen_random(&GenConfig::new(Family::Tree, 50, r.gen())).unwrap().graph;
        let t = binarize(&g, 0, Measure::Cardinality).unwrap();
        let mut seen: Vec<usize> = t.nodes().iter().filter_map(|n| n.vertex).collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..50).collect::<Vec<_>>());
        for node in t.nodes() {
            match node.vertex {
                Some(v) => assert_eq!(node.color, g.color(v)),
                None => assert_eq!(node.color, Color::Uncolored),
            }
        }
        assert_eq!(t.colored_size(t.root()), 50);
        assert_eq!(t.nodes()[t.root()].vertex, Some(0));
        // Inserted nodes: p - 2 per vertex with p >= 3 children plus one pad
        // per vertex with a single child.
        let expected: usize = (0..50)
            .map(|v| {
                let kids = g.degree(v) - usize::from(v != 0);
                match kids {
                    0 | 2 => 0,
                    1 => 1,
                    p => p - 2,
                }
            })
            .sum();
        assert_eq!(t.len(), 50 + expected);
        assert!(t.len() <= 2 * 50);
    }
}

#[test]
fn tables_match_rooted_enumeration() {
    for inst in sweep(Family::Tree, 120, 9, 2) {
        let g = &inst.graph;
        let n = g.len();
        let dp = TreeDp::compute(g, Measure::Cardinality).unwrap();
        let sub = subtrees(g);
        for (x, node) in dp.tree().nodes().iter().enumerate() {
            let Some(v) = node.vertex else { continue };
            let members = &sub[v];
            // Connected subsets of v's subtree that contain v, by balance.
            let mut best = std::collections::BTreeMap::new();
            best.insert(0i64, 0i64);
            for mask in 0u32..1 << members.len() {
                let set: Vec<usize> = (0..members.len()).filter(|&i| mask >> i & 1 == 1).map(|i| members[i]).collect();
                if !set.contains(&v) || !g.is_connected(&set).unwrap() {
                    continue;
                }
                let e = best.entry(balance(g, &set)).or_insert(i64::MIN);
                *e = (*e).max(set.len() as i64);
            }
            let table = dp.table(x);
            let got: std::collections::BTreeMap<i64, i64> = table.entries().collect();
            assert_eq!(got, best, "vertex {v} of a {n}-vertex tree");
        }
    }
}

#[test]
fn finite_entries_are_realized_by_traceback() {
    for inst in sweep(Family::Tree, 150, 14, 3) {
        let g = &inst.graph;
        let dp = TreeDp::compute(g, Measure::Cardinality).unwrap();
        let sub = subtrees(g);
        for (x, node) in dp.tree().nodes().iter().enumerate() {
            let c = dp.tree().colored_size(x) as i64;
            for (d, value) in dp.table(x).entries() {
                assert!(value >= d.abs() && value <= c);
                assert_eq!((value - d).rem_euclid(2), 0);
                let set = dp.traceback(x, d).unwrap();
                assert_eq!(set.len() as i64, value);
                assert_eq!(balance(g, &set), d);
                // Sets under inserted nodes connect only through their owner.
                if let (Some(v), false) = (node.vertex, set.is_empty()) {
                    assert!(g.is_connected(&set).unwrap());
                    assert!(set.contains(&v));
                    assert!(set.iter().all(|u| sub[v].contains(u)));
                }
            }
            assert_eq!(dp.table(x).get(0).map(|v| v >= 0), Some(true));
        }
    }
}

#[test]
fn weighted_tables_use_weight_ranges() {
    let g = BicoloredGraph::new(
        vec![Color::Blue, Color::Red, Color::Red],
        Some(vec![4, 3, 1]),
        [(0, 1), (0, 2)],
    )
    .unwrap();
    let dp = TreeDp::compute(&g, Measure::Weight).unwrap();
    let root = dp.table(dp.tree().root());
    assert_eq!((root.min_balance(), root.max_balance()), (-4, 4));
    assert_eq!(dp.best().objective, 8);
}

fn table_strategy() -> impl Strategy<Value = DpTable> {
    proptest::collection::vec(prop_oneof![Just(1i64), Just(-1)], 0..6).prop_map(|signs| {
        // A chain of colored nodes gives a table with arbitrary reachable shape.
        let mut t = DpTable::empty_only();
        for s in signs {
            t = merge_children(&t, &DpTable::empty_only(), s, 1);
        }
        t
    })
}

proptest! {
    #[test]
    fn merge_is_commutative(a in table_strategy(), b in table_strategy(), delta in -1i64..=1) {
        let w = delta.unsigned_abs();
        prop_assert_eq!(merge_children(&a, &b, delta, w), merge_children(&b, &a, delta, w));
    }
}
