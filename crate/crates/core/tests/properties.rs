mod common;

use bcs_core::io::{gen_random, Family, GenConfig};
use bcs_core::oracle::{brute_force_bcs, brute_force_steiner_excluding, brute_force_wbcs};
use bcs_core::steiner::solve_exact_bcs;
use bcs_core::tree::solve_tree_bcs;
use bcs_core::{BicoloredGraph, Color};
use common::graph;
use proptest::prelude::*;

use Color::{Blue as B, Red as R};

fn instance(max_n: usize, weighted: bool) -> impl Strategy<Value = BicoloredGraph> {
    (prop::sample::select(Family::ALL.to_vec()), 1..=max_n, any::<u64>(), 0.0f64..=1.0).prop_map(
        move |(family, n, seed, ratio)| {
            let mut cfg = GenConfig::new(family, n, seed).with_ratio(ratio);
            if weighted {
                cfg = cfg.with_max_weight(6);
            }
            gen_random(&cfg).unwrap().graph
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn balance_is_additive_over_disjoint_sets(g in instance(14, true), mask in any::<u32>(), split in any::<u32>()) {
        let set: Vec<usize> = (0..g.len()).filter(|&v| mask >> v & 1 == 1).collect();
        let (a, b): (Vec<usize>, Vec<usize>) = set.iter().partition(|&&v| split >> v & 1 == 1);
        let total = g.balance(&set).unwrap();
        prop_assert_eq!(total, g.balance(&a).unwrap() + g.balance(&b).unwrap());
        let by_hand: i64 = set.iter().map(|&v| g.color(v).sign() * g.weight(v) as i64).sum();
        prop_assert_eq!(total, by_hand);
    }

    #[test]
    fn swapping_colors_is_an_involution_preserving_the_optimum(g in instance(11, false)) {
        let s = g.swap_colors();
        prop_assert_eq!(&s.swap_colors(), &g);
        prop_assert!((0..g.len()).all(|v| s.color(v) != g.color(v)));
        let want = brute_force_bcs(&g).unwrap().objective;
        prop_assert_eq!(brute_force_bcs(&s).unwrap().objective, want);
        prop_assert_eq!(solve_exact_bcs(&s).unwrap().objective, want);
        if g.is_tree() {
            prop_assert_eq!(solve_tree_bcs(&s).unwrap().objective, want);
        }
    }

    #[test]
    fn weighted_optimum_survives_color_swap(g in instance(10, true)) {
        prop_assert_eq!(
            brute_force_wbcs(&g.swap_colors()).unwrap().objective,
            brute_force_wbcs(&g).unwrap().objective
        );
    }

    #[test]
    fn adding_an_edge_never_lowers_the_optimum(g in instance(11, false), a in any::<usize>(), b in any::<usize>()) {
        let n = g.len();
        prop_assume!(n >= 2);
        let (u, v) = (a % n, b % n);
        prop_assume!(u != v && !g.has_edge(u, v));
        let mut edges = g.edges().to_vec();
        edges.push((u, v));
        let more = BicoloredGraph::unweighted(g.colors().to_vec(), edges).unwrap();
        let before = brute_force_bcs(&g).unwrap().objective;
        let after = brute_force_bcs(&more).unwrap().objective;
        prop_assert!(after >= before);
        prop_assert_eq!(solve_exact_bcs(&more).unwrap().objective, after);
    }
}

#[test]
fn oracle_examples() {
    assert_eq!(brute_force_bcs(&graph(&[B], &[])).unwrap().objective, 0);
    assert_eq!(brute_force_bcs(&graph(&[B, R], &[(0, 1)])).unwrap().objective, 2);
    let star = graph(&[B, R, R, R], &[(0, 1), (0, 2), (0, 3)]);
    let r = brute_force_bcs(&star).unwrap();
    assert_eq!(r.objective, 2);
    assert!(r.witness.contains(&0));
}

#[test]
fn steiner_oracle_examples() {
    let g = graph(&[R, B, R], &[(0, 1), (1, 2)]);
    assert_eq!(brute_force_steiner_excluding(&g, &[], 1).unwrap(), Some((0, vec![1])));
    assert_eq!(brute_force_steiner_excluding(&g, &[0], 2).unwrap(), Some((2, vec![0, 1, 2])));
    let reds = graph(&[R, R, R], &[(0, 2), (2, 1)]);
    assert_eq!(brute_force_steiner_excluding(&reds, &[0], 1).unwrap(), None);
}
