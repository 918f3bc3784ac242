mod common;

use bcs_core::oracle::naive_min_sum_convolution;
use bcs_core::steiner::{fast_minsum_convolution, ConvolutionError, INFINITY};
use bcs_core::Exec;
use common::rng;
use rand::Rng;

fn table(r: &mut impl Rng, bits: usize, bound: u32, p_inf: f64) -> Vec<u32> {
    (0..1 << bits)
        .map(|_| if r.gen_bool(p_inf) { INFINITY } else { r.gen_range(0..=bound) })
        .collect()
}

#[test]
fn random_pairs_on_ten_elements() {
    let mut r = rng(1);
    for i in 0..100 {
        let bound = r.gen_range(1..=24);
        let p_inf = [0.0, 0.2, 0.6, 0.95][i % 4];
        let f = table(&mut r, 10, bound, p_inf);
        let g = table(&mut r, 10, bound, p_inf);
        let want = naive_min_sum_convolution(&f, &g).unwrap();
        let exec = if i % 2 == 0 { Exec::Sequential } else { Exec::Parallel };
        assert_eq!(fast_minsum_convolution(&f, &g, bound, exec).unwrap(), want, "pair {i}");
    }
}

#[test]
fn semiring_identities() {
    let mut r = rng(2);
    let f = table(&mut r, 10, 12, 0.3);
    let mut unit = vec![INFINITY; 1 << 10];
    unit[0] = 0;
    assert_eq!(fast_minsum_convolution(&f, &unit, 12, Exec::Parallel).unwrap(), f);
    assert_eq!(fast_minsum_convolution(&unit, &f, 12, Exec::Parallel).unwrap(), f);
    let none = vec![INFINITY; 1 << 10];
    assert_eq!(fast_minsum_convolution(&none, &f, 12, Exec::Parallel).unwrap(), none);
    let size: Vec<u32> = (0..1u32 << 10).map(u32::count_ones).collect();
    assert_eq!(fast_minsum_convolution(&size, &size, 10, Exec::Parallel).unwrap(), size);
    assert_eq!(naive_min_sum_convolution(&size, &size).unwrap(), size);
}

#[test]
fn empty_ground_set() {
    assert_eq!(fast_minsum_convolution(&[3], &[4], 4, Exec::Sequential), Ok(vec![7]));
    assert_eq!(fast_minsum_convolution(&[INFINITY], &[4], 4, Exec::Sequential), Ok(vec![INFINITY]));
}

#[test]
fn input_errors() {
    assert_eq!(
        fast_minsum_convolution(&[0, 1, 2], &[0, 1, 2], 2, Exec::Sequential),
        Err(ConvolutionError::TableShape(3, 3))
    );
    assert_eq!(
        fast_minsum_convolution(&[0, 9], &[0, 0], 8, Exec::Sequential),
        Err(ConvolutionError::ValueOutOfRange { index: 1, value: 9, bound: 8 })
    );
    assert!(matches!(
        fast_minsum_convolution(&[0], &[0], INFINITY - 1, Exec::Sequential),
        Err(ConvolutionError::BoundTooLarge(_))
    ));
}
