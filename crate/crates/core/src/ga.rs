//! Genetic search for the fixed-length braid word closest to a target gate.
//!
//! One generation draws `T` parent pairs from the surviving pool, splices each
//! pair at a random cut into two children, mutates each child with probability
//! `P`, then ranks the `2T` children together with the previous best and keeps
//! the first `parent_pool_size`. Fitness is the phase-invariant distance itself.
//!
//! Every crossover draws from its own ChaCha stream keyed by
//! `(restart seed, generation, crossover index)`, so the result does not depend
//! on how many worker threads evaluate the children.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{evaluate_letters, Alphabet, BraidWord, Generator};
use crate::error::{Error, Result};
use crate::gate::GateTarget;
use crate::metric::distance_phase_invariant;
use crate::rng::{derive_seed, stream_rng};
use crate::unitary::Unitary2;

/// Parent-pool cap used when none is configured.
pub const DEFAULT_PARENT_POOL: usize = 2000;

const INIT_BLOCK: u64 = u64::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    /// Uniform over the pool, with replacement.
    #[default]
    Uniform,
    /// Linearly decreasing weight by rank.
    RankWeighted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GaConfig {
    /// `N`: size of the initial population.
    pub population_size: usize,
    /// `T`: crossovers per generation; `None` means `N/2`.
    pub crossover_count: Option<usize>,
    /// `P`: per-child mutation probability.
    pub mutation_prob: f64,
    /// `G`: number of generations.
    pub generations: usize,
    /// Survivors kept as parents; `None` means `min(2000, N)`.
    pub parent_pool_size: Option<usize>,
    /// `L`: length of every word.
    pub word_length: usize,
    pub alphabet: Alphabet,
    pub restarts: usize,
    pub rng_seed: u64,
    pub early_stop_d: Option<f64>,
    pub selection: Selection,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 3000,
            crossover_count: None,
            mutation_prob: 0.1,
            generations: 10_000,
            parent_pool_size: None,
            word_length: 30,
            alphabet: Alphabet::DEFAULT,
            restarts: 3,
            rng_seed: 0,
            early_stop_d: None,
            selection: Selection::Uniform,
        }
    }
}

impl GaConfig {
    pub fn crossovers(&self) -> usize {
        self.crossover_count
            .unwrap_or((self.population_size / 2).max(1))
    }

    pub fn pool_size(&self) -> usize {
        self.parent_pool_size
            .unwrap_or(DEFAULT_PARENT_POOL.min(self.population_size))
    }

    /// Distance evaluations spent by one full run including all restarts.
    pub fn evaluation_budget(&self) -> u64 {
        let per_restart =
            self.population_size as u64 + 2 * self.crossovers() as u64 * self.generations as u64;
        per_restart * self.restarts as u64
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Config(m.to_string()));
        if self.population_size == 0 {
            return fail("population size N must be positive");
        }
        if self.crossovers() == 0 {
            return fail("crossover count T must be positive");
        }
        if self.generations == 0 {
            return fail("generations G must be positive");
        }
        if self.word_length == 0 {
            return fail("word length L must be positive");
        }
        if self.restarts == 0 {
            return fail("restarts must be positive");
        }
        if !(0.0..=1.0).contains(&self.mutation_prob) {
            return fail("mutation probability P must lie in [0, 1]");
        }
        let pool = self.pool_size();
        if pool == 0 || pool > self.population_size {
            return fail("parent pool size must be in 1..=N");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Individual {
    pub word: BraidWord,
    pub fitness_d: f64,
}

impl Individual {
    pub fn new(word: BraidWord, target: &Unitary2) -> Self {
        let fitness_d = distance_phase_invariant(target, &word.evaluate());
        Self { word, fitness_d }
    }
}

#[derive(Clone, Debug)]
pub struct GaRunReport {
    pub best: Individual,
    /// Best distance after initialisation, then after each generation.
    pub best_per_generation: Vec<f64>,
    pub generations_run: usize,
    /// Master seed of the run.
    pub seed: u64,
    /// Index of the restart that produced `best`.
    pub restart: usize,
    /// Distance evaluations across all restarts.
    pub evaluations: u64,
    pub wall_time_s: f64,
}

/// JSON form of a [`GaRunReport`].
#[derive(Debug, Serialize, Deserialize)]
pub struct GaReportJson {
    pub gate: String,
    #[serde(rename = "L")]
    pub word_length: usize,
    pub alphabet: Alphabet,
    #[serde(rename = "N")]
    pub population_size: usize,
    #[serde(rename = "T")]
    pub crossovers: usize,
    #[serde(rename = "P")]
    pub mutation_prob: f64,
    #[serde(rename = "G")]
    pub generations: usize,
    pub seed: u64,
    pub best_word: BraidWord,
    pub best_d: f64,
    pub history: Vec<f64>,
}

impl GaRunReport {
    pub fn to_json(&self, gate: &GateTarget, cfg: &GaConfig) -> GaReportJson {
        GaReportJson {
            gate: gate.label(),
            word_length: cfg.word_length,
            alphabet: cfg.alphabet,
            population_size: cfg.population_size,
            crossovers: cfg.crossovers(),
            mutation_prob: cfg.mutation_prob,
            generations: cfg.generations,
            seed: self.seed,
            best_word: self.best.word.clone(),
            best_d: self.best.fitness_d,
            history: self.best_per_generation.clone(),
        }
    }
}

/// Draws `N` words with letters independent and uniform over the alphabet.
pub fn init_population<R: Rng>(cfg: &GaConfig, target: &Unitary2, rng: &mut R) -> Vec<Individual> {
    let letters = cfg.alphabet.letters();
    let words: Vec<Vec<Generator>> = (0..cfg.population_size)
        .map(|_| {
            (0..cfg.word_length)
                .map(|_| letters[rng.gen_range(0..letters.len())])
                .collect()
        })
        .collect();
    words.into_par_iter().map(|w| score(w, target)).collect()
}

fn score(letters: Vec<Generator>, target: &Unitary2) -> Individual {
    let fitness_d = distance_phase_invariant(target, &evaluate_letters(&letters));
    Individual {
        word: BraidWord::new(letters),
        fitness_d,
    }
}

/// Single-point crossover: `C = A[..cut] ++ B[cut..]`, `D = B[..cut] ++ A[cut..]`.
pub fn crossover(a: &BraidWord, b: &BraidWord, cut: usize) -> (BraidWord, BraidWord) {
    let (a, b) = (a.letters(), b.letters());
    debug_assert_eq!(a.len(), b.len());
    let c = a[..cut].iter().chain(&b[cut..]).copied().collect();
    let d = b[..cut].iter().chain(&a[cut..]).copied().collect();
    (BraidWord::new(c), BraidWord::new(d))
}

/// Uniform cut point in `1..len`; words shorter than two letters cannot be cut
/// and get `0` (children equal to the swapped parents).
pub fn random_cut<R: Rng>(len: usize, rng: &mut R) -> usize {
    if len < 2 {
        0
    } else {
        rng.gen_range(1..len)
    }
}

/// With probability `p`, replaces one uniformly chosen letter by a uniformly
/// chosen different letter of the alphabet.
pub fn mutate<R: Rng>(w: &BraidWord, p: f64, alphabet: Alphabet, rng: &mut R) -> BraidWord {
    let mut letters = w.letters().to_vec();
    mutate_in_place(&mut letters, p, alphabet, rng);
    BraidWord::new(letters)
}

fn mutate_in_place<R: Rng>(letters: &mut [Generator], p: f64, alphabet: Alphabet, rng: &mut R) {
    if letters.is_empty() || !rng.gen_bool(p) {
        return;
    }
    let pos = rng.gen_range(0..letters.len());
    let current = letters[pos];
    let others: Vec<Generator> = alphabet
        .letters()
        .into_iter()
        .filter(|g| *g != current)
        .collect();
    if others.is_empty() {
        return;
    }
    letters[pos] = others[rng.gen_range(0..others.len())];
}

fn pick_parent<R: Rng>(pool_len: usize, selection: Selection, rng: &mut R) -> usize {
    match selection {
        Selection::Uniform => rng.gen_range(0..pool_len),
        Selection::RankWeighted => {
            // Inverse CDF of the density 2(1 − x) on [0, 1).
            let u: f64 = rng.gen();
            let x = 1.0 - (1.0 - u).sqrt();
            ((x * pool_len as f64) as usize).min(pool_len - 1)
        }
    }
}

/// Produces the next parent pool and best individual.
///
/// `pool` must be sorted ascending by distance. `seed` and `generation` key the
/// per-crossover random streams.
pub fn evolve_generation(
    pool: &[Individual],
    cfg: &GaConfig,
    target: &Unitary2,
    best_so_far: &Individual,
    seed: u64,
    generation: u64,
) -> (Vec<Individual>, Individual) {
    let len = cfg.word_length;
    let children: Vec<(Individual, Individual)> = (0..cfg.crossovers() as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(seed, generation, k);
            let a = &pool[pick_parent(pool.len(), cfg.selection, &mut rng)].word;
            let b = &pool[pick_parent(pool.len(), cfg.selection, &mut rng)].word;
            let cut = random_cut(len, &mut rng);
            let (c, d) = crossover(a, b, cut);
            let (mut c, mut d) = (c.into_letters(), d.into_letters());
            mutate_in_place(&mut c, cfg.mutation_prob, cfg.alphabet, &mut rng);
            mutate_in_place(&mut d, cfg.mutation_prob, cfg.alphabet, &mut rng);
            (score(c, target), score(d, target))
        })
        .collect();

    let mut ranked = Vec::with_capacity(2 * children.len() + 1);
    ranked.push(best_so_far.clone());
    for (c, d) in children {
        ranked.push(c);
        ranked.push(d);
    }
    // Stable: among equal distances the earlier entry (older best first) wins.
    ranked.sort_by(|x, y| x.fitness_d.total_cmp(&y.fitness_d));
    ranked.truncate(cfg.pool_size());
    let best = ranked[0].clone();
    (ranked, best)
}

struct SingleRun {
    best: Individual,
    history: Vec<f64>,
    generations_run: usize,
    evaluations: u64,
}

fn run_once(target: &Unitary2, cfg: &GaConfig, seed: u64) -> SingleRun {
    let mut init_rng = stream_rng(seed, INIT_BLOCK, 0);
    let mut pool = init_population(cfg, target, &mut init_rng);
    let mut evaluations = pool.len() as u64;
    pool.sort_by(|x, y| x.fitness_d.total_cmp(&y.fitness_d));
    pool.truncate(cfg.pool_size());
    let mut best = pool[0].clone();
    let mut history = Vec::with_capacity(cfg.generations + 1);
    history.push(best.fitness_d);

    let mut generations_run = 0;
    for g in 0..cfg.generations {
        if cfg.early_stop_d.is_some_and(|stop| best.fitness_d < stop) {
            break;
        }
        let (next, next_best) = evolve_generation(&pool, cfg, target, &best, seed, g as u64);
        pool = next;
        best = next_best;
        evaluations += 2 * cfg.crossovers() as u64;
        history.push(best.fitness_d);
        generations_run += 1;
    }
    SingleRun {
        best,
        history,
        generations_run,
        evaluations,
    }
}

/// Runs the full search (all restarts) and reports the best restart.
pub fn ga_search(target: &GateTarget, cfg: &GaConfig) -> Result<GaRunReport> {
    ga_search_matrix(&target.matrix, cfg)
}

pub fn ga_search_matrix(target: &Unitary2, cfg: &GaConfig) -> Result<GaRunReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut chosen: Option<(usize, SingleRun)> = None;
    let mut evaluations = 0;
    for r in 0..cfg.restarts {
        let run = run_once(target, cfg, derive_seed(cfg.rng_seed, r as u64));
        evaluations += run.evaluations;
        let better = chosen
            .as_ref()
            .is_none_or(|(_, c)| run.best.fitness_d < c.best.fitness_d);
        if better {
            chosen = Some((r, run));
        }
    }
    let (restart, run) = chosen.expect("restarts validated positive");
    Ok(GaRunReport {
        best: run.best,
        best_per_generation: run.history,
        generations_run: run.generations_run,
        seed: cfg.rng_seed,
        restart,
        evaluations,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}
