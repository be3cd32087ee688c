use std::time::Instant;

use rayon::prelude::*;

use super::{Method, SearchReport};
use crate::braid::{Alphabet, BraidWord, Generator};
use crate::error::{Error, Result};
use crate::gate::GateTarget;
use crate::metric::distance_phase_invariant;
use crate::sk::{BaseApproximation, BaseEngine};
use crate::unitary::Unitary2;

/// Default cap on exhaustive evaluations, `2²⁴`.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Number of words of length `len`, or `None` past `u128`.
pub(crate) fn word_count(alphabet: Alphabet, len: usize) -> Option<u128> {
    (alphabet.len() as u128).checked_pow(len.try_into().ok()?)
}

pub(crate) fn check_budget(alphabet: Alphabet, len: usize, budget: u64) -> Result<u64> {
    match word_count(alphabet, len) {
        Some(n) if n <= budget as u128 => Ok(n as u64),
        n => Err(Error::BudgetExceeded {
            required: n.unwrap_or(u128::MAX),
            budget,
        }),
    }
}

/// Splits the words of length `len` into lexicographically ordered blocks by
/// their first `depth` letters.
pub(crate) fn prefix_split(letters: &[Generator], len: usize) -> (usize, Vec<Vec<Generator>>) {
    let k = letters.len();
    let mut depth = 0;
    let mut blocks = 1usize;
    while depth < len && blocks < 256 {
        depth += 1;
        blocks *= k;
    }
    let prefixes = (0..blocks)
        .map(|mut idx| {
            let mut p = vec![letters[0]; depth];
            for slot in p.iter_mut().rev() {
                *slot = letters[idx % k];
                idx /= k;
            }
            p
        })
        .collect();
    (depth, prefixes)
}

struct Dfs<'a> {
    letters: &'a [Generator],
    mats: Vec<Unitary2>,
    target: &'a Unitary2,
    buf: Vec<Generator>,
    best_d: f64,
    best: Vec<Generator>,
}

impl Dfs<'_> {
    fn run(&mut self, prod: Unitary2, remaining: usize) {
        if remaining == 0 {
            let d = distance_phase_invariant(self.target, &prod);
            if d < self.best_d {
                self.best_d = d;
                self.best.clone_from(&self.buf);
            }
            return;
        }
        for i in 0..self.letters.len() {
            self.buf.push(self.letters[i]);
            self.run(prod * self.mats[i], remaining - 1);
            self.buf.pop();
        }
    }
}

/// Exhaustive minimum over all words of exactly `len` letters.
///
/// Ties go to the lexicographically smallest word in text form. Returns the
/// word, its distance and the number of evaluations.
pub fn brute_force_matrix(
    target: &Unitary2,
    len: usize,
    alphabet: Alphabet,
    budget: u64,
) -> Result<(BraidWord, f64, u64)> {
    let evaluations = check_budget(alphabet, len, budget)?;
    let letters = alphabet.letters_lex();
    let mats: Vec<Unitary2> = letters.iter().map(|g| g.matrix()).collect();
    let (depth, prefixes) = prefix_split(&letters, len);
    let locals: Vec<(f64, Vec<Generator>)> = prefixes
        .into_par_iter()
        .map(|prefix| {
            let prod = prefix
                .iter()
                .fold(Unitary2::identity(), |acc, g| acc * g.matrix());
            let mut dfs = Dfs {
                letters: &letters,
                mats: mats.clone(),
                target,
                buf: prefix,
                best_d: f64::INFINITY,
                best: Vec::new(),
            };
            dfs.run(prod, len - depth);
            (dfs.best_d, dfs.best)
        })
        .collect();
    // Blocks arrive in lexicographic order; strict `<` keeps the earliest tie.
    let (best_d, best) = locals
        .into_iter()
        .fold((f64::INFINITY, Vec::new()), |acc, cand| {
            if cand.0 < acc.0 {
                cand
            } else {
                acc
            }
        });
    Ok((BraidWord::new(best), best_d, evaluations))
}

pub fn brute_force(
    target: &GateTarget,
    len: usize,
    alphabet: Alphabet,
    budget: u64,
) -> Result<SearchReport> {
    let start = Instant::now();
    let (best_word, best_d, evaluations) =
        brute_force_matrix(&target.matrix, len, alphabet, budget)?;
    Ok(SearchReport {
        method: Method::Bf,
        gate: target.label(),
        length: len,
        best_word,
        best_d,
        evaluations,
        wall_time_s: start.elapsed().as_secs_f64(),
        seed: None,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct BruteForceEngine {
    pub length: usize,
    pub alphabet: Alphabet,
    pub budget: u64,
}

impl BaseEngine for BruteForceEngine {
    type Output = BraidWord;

    fn base_length(&self) -> usize {
        self.length
    }

    fn approximate(&self, target: &Unitary2) -> Result<BaseApproximation<BraidWord>> {
        let (word, _, evaluations) =
            brute_force_matrix(target, self.length, self.alphabet, self.budget)?;
        Ok(BaseApproximation {
            approx: word,
            evaluations,
        })
    }
}
