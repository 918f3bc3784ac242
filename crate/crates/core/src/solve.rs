//! Algorithm selection over parsed instances.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::SolveResult;
use crate::interval::{solve_interval_bcs, IntervalSolveError};
use crate::io::{Instance, Problem};
use crate::oracle::{brute_force_bcs, brute_force_wbcs, OracleError};
use crate::steiner::{solve_exact_bcs_with, ExactConfig, SteinerError};
use crate::tree::{solve_path_bcs, solve_tree_bcs, solve_tree_wbcs, TreeError};
use crate::treewidth::{build_heuristic_decomposition, solve_tw_bcs, TreewidthError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Auto,
    Tree,
    Path,
    Interval,
    Treewidth,
    Exact,
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Auto,
        Algorithm::Tree,
        Algorithm::Path,
        Algorithm::Interval,
        Algorithm::Treewidth,
        Algorithm::Exact,
        Algorithm::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Auto => "auto",
            Algorithm::Tree => "tree",
            Algorithm::Path => "path",
            Algorithm::Interval => "interval",
            Algorithm::Treewidth => "treewidth",
            Algorithm::Exact => "exact",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{algorithm} does not apply: {reason}")]
    Structure { algorithm: Algorithm, reason: String },
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Interval(#[from] IntervalSolveError),
    #[error(transparent)]
    Treewidth(#[from] TreewidthError),
    #[error(transparent)]
    Steiner(#[from] SteinerError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl SolveError {
    /// Whether the failure is a mismatch between the instance and the chosen
    /// algorithm rather than a resource limit.
    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            SolveError::Structure { .. }
                | SolveError::Tree(_)
                | SolveError::Interval(_)
                | SolveError::Treewidth(TreewidthError::Decomposition(_))
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub exact: ExactConfig,
    /// Largest heuristic width for which `auto` prefers the decomposition
    /// solver over the exact one.
    pub auto_max_width: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            exact: ExactConfig::default(),
            auto_max_width: 4,
        }
    }
}

fn structure(algorithm: Algorithm, reason: &str) -> SolveError {
    SolveError::Structure {
        algorithm,
        reason: reason.to_string(),
    }
}

/// Runs `algorithm` on the instance and reports which concrete algorithm
/// produced the answer (relevant for `auto`).
pub fn solve(
    instance: &Instance,
    algorithm: Algorithm,
    options: &SolveOptions,
) -> Result<(SolveResult, Algorithm), SolveError> {
    let g = &instance.graph;
    if instance.problem == Problem::Wbcs {
        return match algorithm {
            Algorithm::Tree => Ok((solve_tree_wbcs(g)?, Algorithm::Tree)),
            Algorithm::Oracle => Ok((brute_force_wbcs(g)?, Algorithm::Oracle)),
            Algorithm::Auto if g.is_tree() => Ok((solve_tree_wbcs(g)?, Algorithm::Tree)),
            Algorithm::Auto => Ok((brute_force_wbcs(g)?, Algorithm::Oracle)),
            other => Err(structure(other, "weighted instances are solved by tree or oracle only")),
        };
    }
    let result = match algorithm {
        Algorithm::Path => solve_path_bcs(g)?,
        Algorithm::Tree => solve_tree_bcs(g)?,
        Algorithm::Interval => {
            let rep = instance
                .intervals
                .as_ref()
                .ok_or_else(|| structure(algorithm, "instance has no interval lines"))?;
            solve_interval_bcs(g, rep)?
        }
        Algorithm::Treewidth => match &instance.decomposition {
            Some(td) => solve_tw_bcs(g, td)?,
            None => solve_tw_bcs(g, &build_heuristic_decomposition(g))?,
        },
        Algorithm::Exact => solve_exact_bcs_with(g, &options.exact)?,
        Algorithm::Oracle => brute_force_bcs(g)?,
        Algorithm::Auto => {
            let chosen = if g.path_order().is_some() {
                Algorithm::Path
            } else if g.is_tree() {
                Algorithm::Tree
            } else if instance.intervals.is_some() {
                Algorithm::Interval
            } else if instance.decomposition.is_some()
                || build_heuristic_decomposition(g).width() <= options.auto_max_width
            {
                Algorithm::Treewidth
            } else {
                Algorithm::Exact
            };
            return solve(instance, chosen, options);
        }
    };
    Ok((result, algorithm))
}
