//! Monte-Carlo annealing over a braid word viewed as a spin chain.
//!
//! Each letter is a spin state. A sweep walks the chain left to right and
//! proposes a different letter at every site; the move is kept if it lowers the
//! distance, otherwise with probability `exp(−ΔE/T)`. The temperature cools
//! geometrically after each sweep.

use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Method, SearchReport};
use crate::braid::{Alphabet, BraidWord, Generator};
use crate::error::{Error, Result};
use crate::gate::GateTarget;
use crate::metric::distance_phase_invariant;
use crate::rng::stream_rng;
use crate::sk::{BaseApproximation, BaseEngine};
use crate::unitary::Unitary2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct McConfig {
    pub word_length: usize,
    pub alphabet: Alphabet,
    pub sweeps: usize,
    pub t_initial: f64,
    /// Multiplier applied to the temperature after every sweep.
    pub cooling: f64,
    /// Temperature floor.
    pub t_min: f64,
    pub rng_seed: u64,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            word_length: 30,
            alphabet: Alphabet::FULL,
            sweeps: 1000,
            t_initial: 0.1,
            cooling: 0.97,
            t_min: 1e-12,
            rng_seed: 0,
        }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Config(m.to_string()));
        if self.word_length == 0 {
            return fail("annealer word length must be positive");
        }
        if self.sweeps == 0 {
            return fail("annealer sweeps must be positive");
        }
        if !(self.t_initial > 0.0 && self.t_min > 0.0) {
            return fail("annealer temperatures must be positive");
        }
        if !(self.cooling > 0.0 && self.cooling <= 1.0) {
            return fail("cooling factor must lie in (0, 1]");
        }
        Ok(())
    }

    /// Sweeps needed to spend about `evaluations` distance computations.
    pub fn sweeps_for_budget(&self, evaluations: u64) -> usize {
        let per_sweep = if self.alphabet.len() > 1 {
            self.word_length as u64
        } else {
            1
        };
        (evaluations.saturating_sub(1) / per_sweep).max(1) as usize
    }

    /// Distance evaluations spent by a run.
    pub fn evaluation_budget(&self) -> u64 {
        let per_sweep = if self.alphabet.len() > 1 {
            self.word_length as u64
        } else {
            0
        };
        1 + per_sweep * self.sweeps as u64
    }
}

/// Metropolis rule: downhill always, uphill with probability `exp(−ΔE/T)`.
pub fn metropolis_accept<R: Rng>(delta_e: f64, temperature: f64, rng: &mut R) -> bool {
    delta_e < 0.0 || rng.gen::<f64>() < (-delta_e / temperature).exp()
}

/// Returns the best word visited, its distance and the evaluations spent.
pub fn mc_anneal_matrix(target: &Unitary2, cfg: &McConfig) -> Result<(BraidWord, f64, u64)> {
    cfg.validate()?;
    let mut rng = stream_rng(cfg.rng_seed, 0, 0);
    let letters = cfg.alphabet.letters();
    let len = cfg.word_length;
    let mut word: Vec<Generator> = (0..len)
        .map(|_| letters[rng.gen_range(0..letters.len())])
        .collect();
    let mut current = distance_phase_invariant(target, &crate::braid::evaluate_letters(&word));
    let mut evaluations = 1u64;
    let mut best = (current, word.clone());
    let mut temperature = cfg.t_initial;
    let mut suffix = vec![Unitary2::identity(); len + 1];

    for _ in 0..cfg.sweeps {
        if letters.len() < 2 {
            break;
        }
        for i in (0..len).rev() {
            suffix[i] = word[i].matrix() * suffix[i + 1];
        }
        let mut prefix = Unitary2::identity();
        for i in 0..len {
            let old = word[i];
            let pick = rng.gen_range(0..letters.len() - 1);
            let proposal = letters
                .iter()
                .copied()
                .filter(|g| *g != old)
                .nth(pick)
                .unwrap_or(old);
            let m = prefix * proposal.matrix() * suffix[i + 1];
            let d = distance_phase_invariant(target, &m);
            evaluations += 1;
            if metropolis_accept(d - current, temperature, &mut rng) {
                word[i] = proposal;
                current = d;
                if d < best.0 {
                    best = (d, word.clone());
                }
            }
            prefix = prefix * word[i].matrix();
        }
        temperature = (temperature * cfg.cooling).max(cfg.t_min);
    }
    let best_word = BraidWord::new(best.1);
    let d = distance_phase_invariant(target, &best_word.evaluate());
    Ok((best_word, d, evaluations))
}

pub fn mc_anneal(target: &GateTarget, cfg: &McConfig) -> Result<SearchReport> {
    let start = Instant::now();
    let (best_word, best_d, evaluations) = mc_anneal_matrix(&target.matrix, cfg)?;
    Ok(SearchReport {
        method: Method::Mc,
        gate: target.label(),
        length: cfg.word_length,
        best_word,
        best_d,
        evaluations,
        wall_time_s: start.elapsed().as_secs_f64(),
        seed: Some(cfg.rng_seed),
    })
}

#[derive(Clone, Debug)]
pub struct McEngine {
    pub config: McConfig,
}

impl BaseEngine for McEngine {
    type Output = BraidWord;

    fn base_length(&self) -> usize {
        self.config.word_length
    }

    fn approximate(&self, target: &Unitary2) -> Result<BaseApproximation<BraidWord>> {
        let (word, _, evaluations) = mc_anneal_matrix(target, &self.config)?;
        Ok(BaseApproximation {
            approx: word,
            evaluations,
        })
    }
}
