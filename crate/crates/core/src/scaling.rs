//! Timing harness for the empirical scaling checks.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exec::Exec;
use crate::graph::{BicoloredGraph, Color};
use crate::interval::solve_interval_bcs;
use crate::io::{gen_random, Family, GenConfig, IntervalRepresentation};
use crate::steiner::{solve_exact_bcs_with, ExactConfig, SteinerError};
use crate::tree::{solve_path_bcs, solve_tree_bcs};

/// Least-squares slope of `ys` against `xs`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

/// Slope of `ln t` against `ln n`.
pub fn loglog_slope(points: &[(f64, Duration)]) -> Option<f64> {
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.as_secs_f64().ln()).collect();
    least_squares_slope(&xs, &ys)
}

/// Slope of `log2 t` against `n`.
pub fn semilog2_slope(points: &[(f64, Duration)]) -> Option<f64> {
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.as_secs_f64().log2()).collect();
    least_squares_slope(&xs, &ys)
}

pub fn median(mut samples: Vec<Duration>) -> Duration {
    assert!(!samples.is_empty());
    samples.sort_unstable();
    let m = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[m]
    } else {
        (samples[m - 1] + samples[m]) / 2
    }
}

/// Runs `f` once to warm up, then `reps` timed times; returns the median.
/// Stops at the first error.
pub fn time_median<E>(reps: usize, mut f: impl FnMut() -> Result<(), E>) -> Result<Duration, E> {
    f()?;
    let mut samples = Vec::with_capacity(reps.max(1));
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        f()?;
        samples.push(start.elapsed());
    }
    Ok(median(samples))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalingFamily {
    Tree,
    Path,
    Interval,
    /// General graphs with `n = 2|R|`; the size parameter is `|R|`.
    Exact,
}

impl ScalingFamily {
    pub fn name(self) -> &'static str {
        match self {
            ScalingFamily::Tree => "tree",
            ScalingFamily::Path => "path",
            ScalingFamily::Interval => "interval",
            ScalingFamily::Exact => "exact",
        }
    }
}

/// Connected general graph on `2 * reds` vertices, half of them red.
pub fn exact_bench_graph(reds: usize, seed: u64) -> BicoloredGraph {
    let n = 2 * reds;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colors = vec![Color::Blue; n];
    for c in colors.iter_mut().take(reds) {
        *c = Color::Red;
    }
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.2) && !edges.contains(&(u, v)) {
                edges.push((u, v));
            }
        }
    }
    // Interleave colors over the random spanning tree.
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let colors: Vec<Color> = order.iter().map(|&i| colors[i]).collect();
    BicoloredGraph::unweighted(colors, edges).expect("generated graph is simple")
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingPoint {
    pub size: usize,
    /// Median time, or `None` when the run exceeded the limit.
    pub median: Option<Duration>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingReport {
    pub family: ScalingFamily,
    pub points: Vec<ScalingPoint>,
}

impl ScalingReport {
    fn finished(&self) -> Vec<(f64, Duration)> {
        self.points
            .iter()
            .filter_map(|p| Some((p.size as f64, p.median?)))
            .collect()
    }

    pub fn timed_out(&self) -> bool {
        self.points.iter().any(|p| p.median.is_none())
    }

    /// Log-log slope for the polynomial families, `log2 t` against `|R|` for
    /// the exact solver. Only finished sizes count.
    pub fn slope(&self) -> Option<f64> {
        match self.family {
            ScalingFamily::Exact => semilog2_slope(&self.finished()),
            _ => loglog_slope(&self.finished()),
        }
    }
}

/// Times the solver of `family` at each size (one worker, median of `reps`
/// after a warm-up). A run longer than `limit` ends the sweep.
pub fn run_scaling(family: ScalingFamily, sizes: &[usize], reps: usize, seed: u64, limit: Duration) -> ScalingReport {
    let mut points = Vec::new();
    for &size in sizes {
        let median = match family {
            ScalingFamily::Exact => {
                let g = exact_bench_graph(size, seed ^ size as u64);
                time_median(reps, || {
                    let config = ExactConfig {
                        exec: Exec::Sequential,
                        deadline: Some(Instant::now() + limit),
                        ..ExactConfig::default()
                    };
                    solve_exact_bcs_with(&g, &config).map(|_| ())
                })
                .map_err(|e| assert_eq!(e, SteinerError::Timeout, "exact solver failed"))
                .ok()
            }
            _ => {
                let gen_family = match family {
                    ScalingFamily::Tree => Family::Tree,
                    ScalingFamily::Path => Family::Path,
                    _ => Family::Interval,
                };
                let inst = gen_random(&GenConfig::new(gen_family, size, seed ^ size as u64)).expect("size >= 1");
                let g = &inst.graph;
                let rep: Option<&IntervalRepresentation> = inst.intervals.as_ref();
                let t = time_median(reps, || -> Result<(), ()> {
                    match family {
                        ScalingFamily::Tree => {
                            solve_tree_bcs(g).expect("tree");
                        }
                        ScalingFamily::Path => {
                            solve_path_bcs(g).expect("path");
                        }
                        _ => {
                            solve_interval_bcs(g, rep.expect("interval family")).expect("interval");
                        }
                    }
                    Ok(())
                })
                .expect("infallible");
                (t <= limit).then_some(t)
            }
        };
        let stop = median.is_none();
        points.push(ScalingPoint { size, median });
        if stop {
            break;
        }
    }
    ScalingReport { family, points }
}
