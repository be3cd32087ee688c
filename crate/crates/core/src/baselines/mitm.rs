use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use super::{EnumerationTable, Method, SearchReport};
use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::gate::GateTarget;
use crate::metric::distance_phase_invariant;
use crate::sk::{BaseApproximation, BaseEngine};
use crate::unitary::Unitary2;

const CHUNK: usize = 64;

/// Exhaustive scan of all pairs `(a, b)`, scoring `d(target, M_a·M_b)`.
///
/// Returns the concatenated word `a ++ b`, its recomputed distance and the
/// number of pairs scored. Ties go to the lexicographically smallest word.
pub fn mitm_search_matrix(
    target: &Unitary2,
    a: &EnumerationTable,
    b: &EnumerationTable,
) -> Result<(BraidWord, f64, u64)> {
    if a.alphabet != b.alphabet {
        return Err(Error::Config(format!(
            "tables use different alphabets ({} vs {})",
            a.alphabet, b.alphabet
        )));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::Config("empty enumeration table".into()));
    }
    // d(T, M_a M_b) = d(T M_b†, M_a)
    let right: Vec<Unitary2> = b
        .entries
        .iter()
        .map(|e| *target * e.matrix.adjoint())
        .collect();
    let locals: Vec<(f64, usize, usize)> = a
        .entries
        .par_chunks(CHUNK)
        .enumerate()
        .map(|(c, chunk)| {
            let mut best = (f64::INFINITY, 0, 0);
            for (i, ea) in chunk.iter().enumerate() {
                for (j, y) in right.iter().enumerate() {
                    let d = distance_phase_invariant(y, &ea.matrix);
                    if d < best.0 {
                        best = (d, c * CHUNK + i, j);
                    }
                }
            }
            best
        })
        .collect();
    let (_, ia, ib) = locals.into_iter().fold((f64::INFINITY, 0, 0), |acc, cand| {
        if cand.0 < acc.0 {
            cand
        } else {
            acc
        }
    });
    let word = BraidWord::concat([&a.entries[ia].word, &b.entries[ib].word]);
    let d = distance_phase_invariant(target, &word.evaluate());
    Ok((word, d, (a.len() * b.len()) as u64))
}

pub fn mitm_search(
    target: &GateTarget,
    a: &EnumerationTable,
    b: &EnumerationTable,
) -> Result<SearchReport> {
    let start = Instant::now();
    let (best_word, best_d, evaluations) = mitm_search_matrix(&target.matrix, a, b)?;
    Ok(SearchReport {
        method: Method::Mitm,
        gate: target.label(),
        length: a.length + b.length,
        best_word,
        best_d,
        evaluations,
        wall_time_s: start.elapsed().as_secs_f64(),
        seed: None,
    })
}

/// Meet-in-the-middle base engine over two prebuilt tables.
#[derive(Clone, Debug)]
pub struct MitmEngine {
    pub left: Arc<EnumerationTable>,
    pub right: Arc<EnumerationTable>,
}

impl BaseEngine for MitmEngine {
    type Output = BraidWord;

    fn base_length(&self) -> usize {
        self.left.length + self.right.length
    }

    fn approximate(&self, target: &Unitary2) -> Result<BaseApproximation<BraidWord>> {
        let (word, _, evaluations) = mitm_search_matrix(target, &self.left, &self.right)?;
        Ok(BaseApproximation {
            approx: word,
            evaluations,
        })
    }
}
