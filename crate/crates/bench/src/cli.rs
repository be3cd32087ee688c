//! Command-line interface. Flags override the config file, which overrides the
//! built-in defaults.

use std::path::PathBuf;

use anyon_core::baselines::Method;
use anyon_core::{Alphabet, Metric};
use clap::{Args, Parser, Subcommand};

use crate::config::{load_config_file, RunConfig, SweepAxis};
use crate::error::BenchError;

#[derive(Debug, Parser)]
#[command(
    name = "anyon-bench",
    version,
    about = "Compile single-qubit gates into Fibonacci-anyon braid words"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile one gate and write a JSON result.
    Compile(CompileArgs),
    /// Vary one parameter and write one CSV row per (value, seed).
    Sweep(SweepArgs),
    /// Run several methods side by side and write a CSV with per-order medians.
    Compare(CompareArgs),
    /// Re-check a braid word against a gate.
    Verify(VerifyArgs),
    /// Build or inspect cached enumeration tables.
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(Debug, Args)]
pub struct CompileArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum)]
    pub axis: Option<SweepAxis>,
    /// Comma-separated values for the axis.
    #[arg(long, value_delimiter = ',')]
    pub values: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Comma-separated methods (at least two).
    #[arg(long, value_delimiter = ',')]
    pub methods: Option<Vec<Method>>,
    /// Comma-separated base lengths.
    #[arg(long = "l0s", value_delimiter = ',')]
    pub l0s: Option<Vec<usize>>,
    /// Comma-separated recursion orders.
    #[arg(long, value_delimiter = ',')]
    pub orders: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Braid word over A, a, B, b (may be empty).
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    #[arg(long, default_value = "H")]
    pub gate: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CacheCommand {
    /// Build (or reuse) the table for one half-word length.
    Build(CacheArgs),
    /// Print the header and size of a cached table.
    Inspect(CacheArgs),
}

#[derive(Debug, Args)]
pub struct CacheArgs {
    /// Half-word length. With `--l0`, both halves of that split are used.
    #[arg(long)]
    pub length: Option<usize>,
    #[arg(long)]
    pub l0: Option<usize>,
    #[arg(long, default_value = "aB")]
    pub alphabet: Alphabet,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Default, Args)]
pub struct CommonArgs {
    /// TOML or JSON config file (a result artifact also works).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// I, X, H, T or eight comma-separated reals.
    #[arg(long, allow_hyphen_values = true)]
    pub gate: Option<String>,
    /// ga, bf, mitm or mc.
    #[arg(long)]
    pub method: Option<Method>,
    #[arg(long)]
    pub l0: Option<usize>,
    #[arg(long)]
    pub order: Option<usize>,
    /// Letters drawn from A, a, B, b.
    #[arg(long)]
    pub alphabet: Option<Alphabet>,
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[arg(long = "T")]
    pub t: Option<usize>,
    #[arg(long = "P")]
    pub p: Option<f64>,
    #[arg(long = "G")]
    pub g: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Comma-separated seeds for sweep and compare.
    #[arg(long, value_delimiter = ',')]
    pub seeds: Option<Vec<u64>>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// phase_invariant or quaternion.
    #[arg(long, value_parser = parse_metric)]
    pub metric: Option<Metric>,
    /// Annealer sweeps; default matches the genetic search budget.
    #[arg(long)]
    pub sweeps: Option<usize>,
    /// Exhaustive-search evaluation cap.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Disable the recursion memo.
    #[arg(long)]
    pub no_cache: bool,
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    match s {
        "phase_invariant" | "phase-invariant" | "d" => Ok(Metric::PhaseInvariant),
        "quaternion" | "q" => Ok(Metric::Quaternion),
        _ => Err(format!(
            "unknown metric {s:?} (expected phase_invariant or quaternion)"
        )),
    }
}

impl CommonArgs {
    /// Defaults, then the config file, then these flags.
    pub fn resolve(&self) -> Result<RunConfig, BenchError> {
        let mut c = match &self.config {
            Some(p) => load_config_file(p)?,
            None => RunConfig::default(),
        };
        if let Some(v) = &self.gate {
            c.gate = v.clone();
        }
        if let Some(v) = self.method {
            c.method = v;
        }
        if let Some(v) = self.l0 {
            c.l0 = v;
        }
        if let Some(v) = self.order {
            c.order = v;
        }
        if let Some(v) = self.alphabet {
            c.alphabet = Some(v);
        }
        if let Some(v) = self.n {
            c.ga.population_size = v;
        }
        if let Some(v) = self.t {
            c.ga.crossover_count = Some(v);
        }
        if let Some(v) = self.p {
            c.ga.mutation_prob = v;
        }
        if let Some(v) = self.g {
            c.ga.generations = v;
        }
        if let Some(v) = self.restarts {
            c.ga.restarts = v;
        }
        if let Some(v) = self.seed {
            c.seed = v;
        }
        if let Some(v) = &self.seeds {
            c.seeds = v.clone();
        }
        if let Some(v) = self.threads {
            c.threads = Some(v);
        }
        if let Some(v) = self.metric {
            c.metric = v;
        }
        if let Some(v) = self.sweeps {
            c.mc.sweeps = Some(v);
        }
        if let Some(v) = self.budget {
            c.budget = v;
        }
        if self.no_cache {
            c.cache = false;
        }
        c.validate()?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("anyon-bench").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        std::fs::write(&path, "gate = \"T\"\nl0 = 12\n[ga]\nN = 40\nG = 7\n").unwrap();
        let cli = parse(&[
            "compile",
            "--config",
            path.to_str().unwrap(),
            "--l0",
            "9",
            "--P",
            "0.3",
            "--method",
            "mc",
        ]);
        let Command::Compile(a) = cli.command else {
            panic!()
        };
        let c = a.common.resolve().unwrap();
        assert_eq!(c.gate, "T");
        assert_eq!(c.l0, 9);
        assert_eq!(c.ga.population_size, 40);
        assert_eq!(c.ga.generations, 7);
        assert_eq!(c.ga.mutation_prob, 0.3);
        assert_eq!(c.method, Method::Mc);
    }

    #[test]
    fn list_flags() {
        let cli = parse(&[
            "compare",
            "--methods",
            "ga,mc,bf",
            "--orders",
            "0,2",
            "--l0s",
            "10,20",
            "--seeds",
            "1,2",
        ]);
        let Command::Compare(a) = cli.command else {
            panic!()
        };
        assert_eq!(a.methods.unwrap(), vec![Method::Ga, Method::Mc, Method::Bf]);
        assert_eq!(a.orders.unwrap(), vec![0, 2]);
        assert_eq!(a.l0s.unwrap(), vec![10, 20]);
        assert_eq!(a.common.seeds.unwrap(), vec![1, 2]);

        let cli = parse(&["sweep", "--axis", "P", "--values", "0,0.1"]);
        let Command::Sweep(a) = cli.command else {
            panic!()
        };
        assert_eq!(a.axis, Some(SweepAxis::P));
        assert_eq!(a.values.unwrap(), vec!["0", "0.1"]);
    }

    #[test]
    fn bad_values_are_rejected() {
        let bad = |args: &[&str]| {
            Cli::try_parse_from(std::iter::once("anyon-bench").chain(args.iter().copied())).is_err()
        };
        assert!(bad(&["compile", "--alphabet", "aX"]));
        assert!(bad(&["compile", "--method", "rl"]));
        assert!(bad(&["compile", "--metric", "frobenius"]));
        let cli = parse(&["compile", "--gate", "Q"]);
        let Command::Compile(a) = cli.command else {
            panic!()
        };
        assert!(a.common.resolve().is_err());
    }
}
