//! Min-sum subset convolution through ranked zeta and Möbius transforms.
//!
//! A value `a` is encoded as the monomial `z^a`; a subset convolution over
//! polynomials then counts, for every `X` and every `a`, the splits of `X`
//! whose two parts sum to `a`, and `h(X)` is the lowest degree with a nonzero
//! count. Coefficients are counts of at most `2^|U|` splits, so wrapping `u32`
//! arithmetic recovers them exactly. Each rank keeps only the window of
//! degrees that actually occurs, which keeps the polynomials short.

use thiserror::Error;

use super::INFINITY;
use crate::exec::Exec;

/// Largest ground set accepted by the transforms.
pub const MAX_GROUND_SET: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvolutionError {
    #[error("tables have lengths {0} and {1}, expected equal powers of two")]
    TableShape(usize, usize),
    #[error("ground set of {0} elements exceeds the limit of {MAX_GROUND_SET}")]
    TooLarge(usize),
    #[error("entry {index} has value {value} above the bound {bound}")]
    ValueOutOfRange { index: usize, value: u32, bound: u32 },
    #[error("bound {0} leaves no room for sums below the infinity marker")]
    BoundTooLarge(u32),
}

/// Masks of `0..2^bits` grouped by population count.
pub(crate) fn masks_by_rank(bits: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); bits + 1];
    for m in 0..1usize << bits {
        out[m.count_ones() as usize].push(m);
    }
    out
}

/// Zeta transform of `sum over |Y| = rank of z^(value(Y) - lo)`.
struct Slice {
    lo: u32,
    width: usize,
    coeffs: Vec<u32>,
}

impl Slice {
    fn build(bits: usize, members: &[usize], value: &dyn Fn(usize) -> u32) -> Option<Slice> {
        let (mut lo, mut hi) = (INFINITY, 0);
        for &y in members {
            let v = value(y);
            if v != INFINITY {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        if lo == INFINITY {
            return None;
        }
        let width = (hi - lo + 1) as usize;
        let mut coeffs = vec![0u32; width << bits];
        for &y in members {
            let v = value(y);
            if v != INFINITY {
                coeffs[y * width + (v - lo) as usize] = 1;
            }
        }
        for bit in 0..bits {
            let step = 1usize << bit;
            for s in 0..1usize << bits {
                if s & step != 0 {
                    let t = s ^ step;
                    let (low, high) = coeffs.split_at_mut(s * width);
                    let src = &low[t * width..(t + 1) * width];
                    for (d, &x) in high[..width].iter_mut().zip(src) {
                        *d = d.wrapping_add(x);
                    }
                }
            }
        }
        Some(Slice { lo, width, coeffs })
    }

    fn at(&self, s: usize) -> &[u32] {
        &self.coeffs[s * self.width..(s + 1) * self.width]
    }
}

/// `h(X)` for every `X` of rank `k` (in the order of `rank_k`), from the
/// pairs `(f_slices[j], g_slices[k - j])`.
fn rank_product(
    bits: usize,
    k: usize,
    rank_k: &[usize],
    f_slices: &[Option<Slice>],
    g_slices: &[Option<Slice>],
) -> Vec<u32> {
    let pairs: Vec<(&Slice, &Slice)> = (0..=k)
        .filter_map(|j| Some((f_slices.get(j)?.as_ref()?, g_slices.get(k - j)?.as_ref()?)))
        .collect();
    if pairs.is_empty() {
        return vec![INFINITY; rank_k.len()];
    }
    let lo = pairs.iter().map(|(a, b)| a.lo + b.lo).min().expect("non-empty");
    let hi = pairs
        .iter()
        .map(|(a, b)| a.lo + b.lo + (a.width + b.width - 2) as u32)
        .max()
        .expect("non-empty");
    let width = (hi - lo + 1) as usize;
    let mut h = vec![0u32; width << bits];
    for s in 0..1usize << bits {
        if s.count_ones() as usize > k {
            continue;
        }
        let out = &mut h[s * width..(s + 1) * width];
        for (a, b) in &pairs {
            let base = (a.lo + b.lo - lo) as usize;
            let (pa, pb) = (a.at(s), b.at(s));
            for (i, &x) in pa.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in pb.iter().enumerate() {
                    let c = &mut out[base + i + j];
                    *c = c.wrapping_add(x.wrapping_mul(y));
                }
            }
        }
    }
    // Möbius; only sets of rank <= k are needed below.
    for bit in 0..bits {
        let step = 1usize << bit;
        for s in 0..1usize << bits {
            if s & step != 0 && s.count_ones() as usize <= k {
                let t = s ^ step;
                let (low, high) = h.split_at_mut(s * width);
                let src = &low[t * width..(t + 1) * width];
                for (d, &x) in high[..width].iter_mut().zip(src) {
                    *d = d.wrapping_sub(x);
                }
            }
        }
    }
    rank_k
        .iter()
        .map(|&x| {
            h[x * width..(x + 1) * width]
                .iter()
                .position(|&c| c != 0)
                .map_or(INFINITY, |a| lo + a as u32)
        })
        .collect()
}

/// `h(X) = min over Y ⊆ X of f(Y) + g(X \ Y)` for every `X`, where
/// [`INFINITY`] marks absent values. Finite entries must not exceed `bound`.
pub fn fast_minsum_convolution(f: &[u32], g: &[u32], bound: u32, exec: Exec) -> Result<Vec<u32>, ConvolutionError> {
    if f.len() != g.len() || !f.len().is_power_of_two() {
        return Err(ConvolutionError::TableShape(f.len(), g.len()));
    }
    let bits = f.len().trailing_zeros() as usize;
    if bits > MAX_GROUND_SET {
        return Err(ConvolutionError::TooLarge(bits));
    }
    if bound >= INFINITY / 2 {
        return Err(ConvolutionError::BoundTooLarge(bound));
    }
    for table in [f, g] {
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v != INFINITY && v > bound) {
            return Err(ConvolutionError::ValueOutOfRange { index, value, bound });
        }
    }
    let by_rank = masks_by_rank(bits);
    let f_slices: Vec<Option<Slice>> = exec.map(&by_rank, |members| Slice::build(bits, members, &|y| f[y]));
    let g_slices: Vec<Option<Slice>> = exec.map(&by_rank, |members| Slice::build(bits, members, &|y| g[y]));
    let per_rank = exec.map_range(bits + 1, |k| rank_product(bits, k, &by_rank[k], &f_slices, &g_slices));
    let mut h = vec![INFINITY; f.len()];
    for (k, values) in per_rank.into_iter().enumerate() {
        for (&x, v) in by_rank[k].iter().zip(values) {
            h[x] = v;
        }
    }
    Ok(h)
}

/// For every `X` of rank `level >= 2`, the minimum of `phi(Y) + phi(X \ Y)`
/// over non-empty proper subsets `Y` of `X`. Only ranks `1..level` of `phi`
/// are read.
pub(crate) fn proper_split_level(
    bits: usize,
    by_rank: &[Vec<usize>],
    level: usize,
    phi: &dyn Fn(usize) -> u32,
) -> Vec<u32> {
    debug_assert!(level >= 2);
    let slices: Vec<Option<Slice>> = (0..level)
        .map(|j| if j == 0 { None } else { Slice::build(bits, &by_rank[j], phi) })
        .collect();
    rank_product(bits, level, &by_rank[level], &slices, &slices)
}
