mod common;

use bcs_core::io::{encode_subset_sum_star, encode_x3c_bipartite, encode_x3c_split, ReductionError};
use bcs_core::oracle::{brute_force_wbcs, exact_cover_exists, subset_sum_exists};
use bcs_core::Color;
use common::{check_witness, rng};
use rand::seq::SliceRandom;
use rand::Rng;

/// Does some subset of `items` sum to exactly `target`? Bitmask search.
fn subset_sum_by_masks(items: &[u64], target: u64) -> bool {
    (0u32..1 << items.len()).any(|m| (0..items.len()).filter(|&i| m >> i & 1 == 1).map(|i| items[i]).sum::<u64>() == target)
}

#[test]
fn subset_sum_examples() {
    let six = encode_subset_sum_star(&[1, 2, 3], 3).unwrap();
    assert_eq!(brute_force_wbcs(&six.instance.graph).unwrap().objective, 6);
    let none = encode_subset_sum_star(&[2], 1).unwrap();
    assert_eq!(brute_force_wbcs(&none.instance.graph).unwrap().objective, 0);
    let single = encode_subset_sum_star(&[7], 7).unwrap();
    assert_eq!(brute_force_wbcs(&single.instance.graph).unwrap().objective, 14);
    assert_eq!(encode_subset_sum_star(&[], 3), Err(ReductionError::NoItems));
}

#[test]
fn star_reaches_target_iff_subset_sum_holds() {
    let mut r = rng(1);
    for i in 0..400 {
        let len = 1 + i % 12;
        let items: Vec<u64> = (0..len).map(|_| r.gen_range(1..=20)).collect();
        let b = r.gen_range(1..=items.iter().sum::<u64>() + 3);
        let enc = encode_subset_sum_star(&items, b).unwrap();
        let g = &enc.instance.graph;
        assert_eq!(enc.target, 2 * b);
        assert!(g.is_tree() && g.edges().iter().all(|&(u, v)| g.color(u) != g.color(v)));
        let opt = brute_force_wbcs(g).unwrap();
        check_witness(g, &opt);
        let yes = subset_sum_by_masks(&items, b);
        assert_eq!(yes, subset_sum_exists(&items, b));
        assert_eq!(opt.objective == 2 * b, yes, "items {items:?}, b {b}");
        assert!(opt.objective <= 2 * b);
    }
}

#[test]
fn x3c_examples() {
    let yes = [[0, 1, 2], [3, 4, 5], [0, 1, 3]];
    let no = [[0, 1, 2], [0, 1, 3], [0, 1, 4]];
    for encode in [encode_x3c_bipartite, encode_x3c_split] {
        let enc = encode(6, &yes).unwrap();
        let g = &enc.instance.graph;
        assert_eq!(g.len(), 10);
        assert_eq!(g.weights(), &[1, 1, 1, 1, 1, 1, 9, 9, 9, 12]);
        assert_eq!(enc.target, 36);
        assert_eq!(brute_force_wbcs(g).unwrap().objective, 36);
        let enc = encode(6, &no).unwrap();
        assert!(brute_force_wbcs(&enc.instance.graph).unwrap().objective < 36);
        assert_eq!(encode(3, &[[0, 1, 2], [0, 1, 2]]), Err(ReductionError::DuplicateTriple(1)));
        assert_eq!(
            encode(3, &[[0, 1, 2], [0, 1, 7]]),
            Err(ReductionError::UnknownElement { triple: 1, element: 7 })
        );
        assert_eq!(encode(3, &[[0, 1, 2]]), Err(ReductionError::TooFewTriples(1)));
        assert_eq!(encode(4, &[[0, 1, 2], [1, 2, 3]]), Err(ReductionError::GroundSetSize(4)));
    }
}

fn exact_cover_by_masks(m: usize, triples: &[[usize; 3]]) -> bool {
    let full = (1u32 << m) - 1;
    (0u32..1 << triples.len()).any(|pick| {
        let mut covered = 0u32;
        let mut count = 0;
        for (i, t) in triples.iter().enumerate() {
            if pick >> i & 1 == 1 {
                count += 3;
                covered |= t.iter().fold(0, |a, &e| a | 1 << e);
            }
        }
        covered == full && count == m
    })
}

#[test]
fn x3c_encodings_reach_target_iff_an_exact_cover_exists() {
    let mut r = rng(2);
    let (mut yes_count, mut no_count) = (0, 0);
    for i in 0..240 {
        let m = 3 * (1 + i % 3);
        let all: Vec<[usize; 3]> = (0..m)
            .flat_map(|a| (a + 1..m).flat_map(move |b| (b + 1..m).map(move |c| [a, b, c])))
            .collect();
        let count = r.gen_range(2..=6.min(all.len()).max(2));
        let mut triples: Vec<[usize; 3]> = all.choose_multiple(&mut r, count).copied().collect();
        if triples.len() < 2 {
            continue;
        }
        for t in triples.iter_mut() {
            t.shuffle(&mut r);
        }
        let yes = exact_cover_by_masks(m, &triples);
        assert_eq!(yes, exact_cover_exists(m, &triples));
        if yes {
            yes_count += 1;
        } else {
            no_count += 1;
        }
        for (split, encode) in [(false, encode_x3c_bipartite as fn(_, &_) -> _), (true, encode_x3c_split)] {
            let enc = encode(m, &triples).unwrap();
            let g = &enc.instance.graph;
            let k = (m / 3) as u64;
            let n = triples.len() as u64;
            assert_eq!(enc.target, 2 * k * n * n);
            let hub = g.len() - 1;
            assert_eq!(g.weight(hub), k * (n * n - 3));
            if split {
                for a in m..hub {
                    for b in a + 1..hub {
                        assert!(g.has_edge(a, b));
                    }
                }
            } else {
                assert!(g.edges().iter().all(|&(u, v)| g.color(u) != g.color(v)));
            }
            assert!((0..m).chain([hub]).all(|v| g.color(v) == Color::Blue));
            let opt = brute_force_wbcs(g).unwrap();
            check_witness(g, &opt);
            assert_eq!(opt.objective >= enc.target, yes, "m {m}, triples {triples:?}, split {split}");
        }
    }
    assert!(yes_count > 10 && no_count > 10, "{yes_count} yes, {no_count} no");
}
