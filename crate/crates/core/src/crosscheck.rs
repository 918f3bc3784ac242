//! Randomized agreement checks between every applicable solver and the
//! exhaustive oracle.

use std::fmt::Write as _;

use crate::exec::Exec;
use crate::graph::{validate_witness, SolveResult};
use crate::io::{gen_random, Family, GenConfig, GenError, Instance, Problem};
use crate::oracle::MAX_ORACLE_VERTICES;
use crate::solve::{solve, Algorithm, SolveOptions};

const RATIOS: [f64; 5] = [0.3, 0.4, 0.5, 0.6, 0.7];

#[derive(Clone, Debug, PartialEq)]
pub struct CrosscheckConfig {
    pub family: Family,
    pub count: usize,
    pub max_n: usize,
    pub seed: u64,
    pub max_weight: Option<u64>,
    pub exec: Exec,
    /// Test hook: inflate this solver's objective to check that
    /// disagreements are caught.
    pub fault: Option<Algorithm>,
}

impl CrosscheckConfig {
    pub fn new(family: Family, count: usize, max_n: usize, seed: u64) -> Self {
        Self {
            family,
            count,
            max_n,
            seed,
            max_weight: None,
            exec: Exec::default(),
            fault: None,
        }
    }
}

/// Parameters that regenerate one crosscheck instance.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseSpec {
    pub index: usize,
    pub gen: GenConfig,
}

impl CaseSpec {
    /// Command line regenerating this instance with the `bcs` binary.
    pub fn reproduce(&self) -> String {
        let mut cmd = format!(
            "bcs gen --family {} --n {} --seed {} --ratio {}",
            self.gen.family, self.gen.n, self.gen.seed, self.gen.blue_ratio
        );
        if let Some(w) = self.gen.max_weight {
            let _ = write!(cmd, " --max-weight {w}");
        }
        cmd.push_str(" --out case.txt");
        cmd
    }
}

fn mix(seed: u64, index: usize) -> u64 {
    // splitmix64 finalizer over the pair.
    let mut z = seed ^ (index as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The `index`-th case of a crosscheck run.
pub fn case_spec(config: &CrosscheckConfig, index: usize) -> CaseSpec {
    let h = mix(config.seed, index);
    let n = 1 + (h % config.max_n.max(1) as u64) as usize;
    let mut gen = GenConfig::new(config.family, n, h).with_ratio(RATIOS[(h >> 40) as usize % RATIOS.len()]);
    gen.max_weight = config.max_weight;
    CaseSpec { index, gen }
}

/// Solvers whose structural preconditions the instance meets, excluding the
/// oracle.
pub fn applicable_algorithms(instance: &Instance) -> Vec<Algorithm> {
    let g = &instance.graph;
    let mut out = Vec::new();
    if instance.problem == Problem::Wbcs {
        if g.is_tree() {
            out.push(Algorithm::Tree);
        }
        return out;
    }
    if g.path_order().is_some() {
        out.push(Algorithm::Path);
    }
    if g.is_tree() {
        out.push(Algorithm::Tree);
    }
    if instance.intervals.is_some() {
        out.push(Algorithm::Interval);
    }
    out.push(Algorithm::Treewidth);
    out.push(Algorithm::Exact);
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverOutcome {
    pub algorithm: Algorithm,
    /// Objective, or the error message.
    pub result: Result<u64, String>,
    pub witness_valid: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseReport {
    pub spec: CaseSpec,
    pub oracle: u64,
    pub outcomes: Vec<SolverOutcome>,
}

impl CaseReport {
    pub fn agrees(&self) -> bool {
        self.outcomes
            .iter()
            .all(|o| o.witness_valid && o.result.as_ref().is_ok_and(|&v| v == self.oracle))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrosscheckReport {
    pub family: Family,
    pub cases: Vec<CaseReport>,
}

impl CrosscheckReport {
    pub fn disagreements(&self) -> impl Iterator<Item = &CaseReport> {
        self.cases.iter().filter(|c| !c.agrees())
    }

    pub fn all_agree(&self) -> bool {
        self.disagreements().next().is_none()
    }

    /// Per solver: `(algorithm, agreeing cases, cases run)`.
    pub fn matrix(&self) -> Vec<(Algorithm, usize, usize)> {
        let mut rows: Vec<(Algorithm, usize, usize)> = Vec::new();
        for case in &self.cases {
            for o in &case.outcomes {
                let ok = o.witness_valid && o.result.as_ref().is_ok_and(|&v| v == case.oracle);
                match rows.iter_mut().find(|r| r.0 == o.algorithm) {
                    Some(r) => {
                        r.1 += usize::from(ok);
                        r.2 += 1;
                    }
                    None => rows.push((o.algorithm, usize::from(ok), 1)),
                }
            }
        }
        rows
    }

    pub fn render(&self) -> String {
        let mut out = format!("family {}: {} instances\n", self.family, self.cases.len());
        for (alg, ok, total) in self.matrix() {
            let _ = writeln!(out, "  {alg:<10} {ok}/{total} agree with oracle");
        }
        for case in self.disagreements() {
            let _ = writeln!(out, "DISAGREEMENT at index {} (oracle {})", case.spec.index, case.oracle);
            for o in &case.outcomes {
                let _ = writeln!(
                    out,
                    "    {:<10} {:?} witness {}",
                    o.algorithm,
                    o.result,
                    if o.witness_valid { "ok" } else { "INVALID" }
                );
            }
            let _ = writeln!(out, "  reproduce: {}", case.spec.reproduce());
        }
        out
    }
}

fn run_case(config: &CrosscheckConfig, index: usize) -> Result<CaseReport, GenError> {
    let spec = case_spec(config, index);
    let instance = gen_random(&spec.gen)?;
    let options = SolveOptions {
        exact: crate::steiner::ExactConfig {
            exec: Exec::Sequential,
            ..Default::default()
        },
        ..SolveOptions::default()
    };
    let (oracle, _) = solve(&instance, Algorithm::Oracle, &options).expect("oracle within its size limit");
    let outcomes = applicable_algorithms(&instance)
        .into_iter()
        .map(|algorithm| match solve(&instance, algorithm, &options) {
            Ok((mut r, _)) => {
                let witness_valid = validate_witness(&instance.graph, &r).is_ok();
                if config.fault == Some(algorithm) {
                    r = SolveResult { objective: r.objective + 2, ..r };
                }
                SolverOutcome {
                    algorithm,
                    result: Ok(r.objective),
                    witness_valid,
                }
            }
            Err(e) => SolverOutcome {
                algorithm,
                result: Err(e.to_string()),
                witness_valid: false,
            },
        })
        .collect();
    Ok(CaseReport {
        spec,
        oracle: oracle.objective,
        outcomes,
    })
}

/// Generates `count` instances and runs every applicable solver against the
/// oracle. Deterministic in the config.
pub fn crosscheck(config: &CrosscheckConfig) -> Result<CrosscheckReport, GenError> {
    if config.max_n == 0 {
        return Err(GenError::Empty);
    }
    assert!(config.max_n <= MAX_ORACLE_VERTICES, "oracle limit is {MAX_ORACLE_VERTICES} vertices");
    let cases = config.exec.map_range(config.count, |i| run_case(config, i));
    Ok(CrosscheckReport {
        family: config.family,
        cases: cases.into_iter().collect::<Result<_, _>>()?,
    })
}
