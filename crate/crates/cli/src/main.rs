use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use bcs_core::crosscheck::{crosscheck, CrosscheckConfig};
use bcs_core::io::{gen_random, parse_instance, write_instance, write_solution, Family, GenConfig};
use bcs_core::scaling::{run_scaling, ScalingFamily};
use bcs_core::{solve, validate_witness, Algorithm, Exec, SolveOptions};
use clap::{Parser, Subcommand, ValueEnum};

const EXIT_DISAGREE: u8 = 1;
const EXIT_REFUSED: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "bcs", version, about = "Maximum balanced connected subgraph solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance file.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "auto", value_parser = parse_algorithm)]
        algorithm: Algorithm,
        /// Also write the solution to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Fraction of blue vertices.
        #[arg(long, default_value_t = 0.5)]
        ratio: f64,
        /// Draw vertex weights from 1..=W and emit a weighted instance.
        #[arg(long)]
        max_weight: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every applicable solver against the oracle on random instances.
    Crosscheck {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_weight: Option<u64>,
        #[arg(long)]
        sequential: bool,
        /// Corrupt one solver's answers to check that the harness notices.
        #[arg(long, hide = true, value_parser = parse_algorithm)]
        inject_fault: Option<Algorithm>,
    },
    /// Time a solver over a list of sizes and fit the growth rate.
    Bench {
        #[arg(long, value_enum)]
        family: BenchFamily,
        /// Sizes; red-vertex counts for the exact family.
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-run time limit in seconds; a slower size ends the sweep.
        #[arg(long, default_value_t = 60.0)]
        limit: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchFamily {
    Tree,
    Path,
    Interval,
    Exact,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: bcs_core::io::GenError| e.to_string())
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("bcs: {msg}");
    ExitCode::from(code)
}

fn cmd_solve(input: PathBuf, algorithm: Algorithm, out: Option<PathBuf>) -> ExitCode {
    let text = match std::fs::read_to_string(&input) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_INPUT, format!("{}: {e}", input.display())),
    };
    let instance = match parse_instance(&text) {
        Ok(i) => i,
        Err(e) => return fail(EXIT_INPUT, format!("{}: {e}", input.display())),
    };
    let (result, used) = match solve(&instance, algorithm, &SolveOptions::default()) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_REFUSED, e),
    };
    if let Err(e) = validate_witness(&instance.graph, &result) {
        return fail(EXIT_DISAGREE, format!("{used} produced an invalid witness: {e}"));
    }
    let solution = write_solution(&result);
    print!("# algorithm {used}\n{solution}");
    if let Some(path) = out {
        if let Err(e) = std::fs::write(&path, &solution) {
            return fail(EXIT_INPUT, format!("{}: {e}", path.display()));
        }
    }
    ExitCode::SUCCESS
}

fn cmd_gen(config: GenConfig, out: PathBuf) -> ExitCode {
    let instance = match gen_random(&config) {
        Ok(i) => i,
        Err(e) => return fail(EXIT_REFUSED, e),
    };
    match std::fs::write(&out, write_instance(&instance)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_INPUT, format!("{}: {e}", out.display())),
    }
}

fn cmd_crosscheck(config: CrosscheckConfig) -> ExitCode {
    if !(1..=bcs_core::oracle::MAX_ORACLE_VERTICES).contains(&config.max_n) {
        return fail(
            EXIT_REFUSED,
            format!("--max-n must be in 1..={}", bcs_core::oracle::MAX_ORACLE_VERTICES),
        );
    }
    let report = match crosscheck(&config) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_REFUSED, e),
    };
    print!("{}", report.render());
    if report.all_agree() {
        println!("all agree");
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_DISAGREE)
    }
}

fn cmd_bench(family: BenchFamily, ns: &[usize], reps: usize, seed: u64, limit: f64) -> ExitCode {
    if ns.contains(&0) {
        return fail(EXIT_REFUSED, "sizes must be positive");
    }
    let family = match family {
        BenchFamily::Tree => ScalingFamily::Tree,
        BenchFamily::Path => ScalingFamily::Path,
        BenchFamily::Interval => ScalingFamily::Interval,
        BenchFamily::Exact => ScalingFamily::Exact,
    };
    let report = run_scaling(family, ns, reps, seed, Duration::from_secs_f64(limit));
    let label = if family == ScalingFamily::Exact { "reds" } else { "n" };
    println!("{label:>10}  median_seconds");
    for p in &report.points {
        match p.median {
            Some(t) => println!("{:>10}  {:.6}", p.size, t.as_secs_f64()),
            None => println!("{:>10}  >{limit}", p.size),
        }
    }
    let kind = if family == ScalingFamily::Exact { "log2(time) vs reds" } else { "log-log" };
    match report.slope() {
        Some(s) => println!("{kind} slope {s:.3}"),
        None => println!("{kind} slope n/a (need two finished sizes)"),
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Solve { input, algorithm, out } => cmd_solve(input, algorithm, out),
        Command::Gen {
            family,
            n,
            seed,
            ratio,
            max_weight,
            out,
        } => {
            let mut config = GenConfig::new(family, n, seed).with_ratio(ratio);
            config.max_weight = max_weight;
            cmd_gen(config, out)
        }
        Command::Crosscheck {
            family,
            count,
            max_n,
            seed,
            max_weight,
            sequential,
            inject_fault,
        } => {
            let mut config = CrosscheckConfig::new(family, count, max_n, seed);
            config.max_weight = max_weight;
            config.fault = inject_fault;
            if sequential {
                config.exec = Exec::Sequential;
            }
            cmd_crosscheck(config)
        }
        Command::Bench {
            family,
            ns,
            reps,
            seed,
            limit,
        } => cmd_bench(family, &ns, reps, seed, limit),
    }
}
