//! Reference searchers: exhaustive enumeration, meet-in-the-middle over two
//! deduplicated enumeration tables, and a Monte-Carlo spin-chain annealer.
//!
//! All of them return a [`SearchReport`] and can serve as the order-0 engine of
//! the Solovay-Kitaev recursion.

mod anneal;
mod brute;
mod mitm;
mod table;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::ga::GaRunReport;
use crate::gate::GateTarget;
use crate::metric::distance_phase_invariant;
use crate::unitary::Unitary2;

pub use anneal::{mc_anneal, mc_anneal_matrix, metropolis_accept, McConfig, McEngine};
pub use brute::{brute_force, brute_force_matrix, BruteForceEngine, DEFAULT_BUDGET};
pub use mitm::{mitm_search, mitm_search_matrix, MitmEngine};
pub use table::{
    build_enumeration_table, cache_path, load_or_build_table, EnumerationTable, TableEntry,
    CACHE_VERSION,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Bf,
    Mitm,
    Mc,
    Ga,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Bf => "bf",
            Method::Mitm => "mitm",
            Method::Mc => "mc",
            Method::Ga => "ga",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bf" => Ok(Method::Bf),
            "mitm" => Ok(Method::Mitm),
            "mc" => Ok(Method::Mc),
            "ga" => Ok(Method::Ga),
            other => Err(format!(
                "unknown method {other:?} (expected ga, bf, mitm or mc)"
            )),
        }
    }
}

/// Uniform result of one fixed-length search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub method: Method,
    pub gate: String,
    #[serde(rename = "L")]
    pub length: usize,
    pub best_word: BraidWord,
    pub best_d: f64,
    pub evaluations: u64,
    pub wall_time_s: f64,
    pub seed: Option<u64>,
}

impl SearchReport {
    /// Distance of `best_word` to `target`, recomputed from scratch.
    pub fn recomputed_d(&self, target: &Unitary2) -> f64 {
        distance_phase_invariant(target, &self.best_word.evaluate())
    }

    pub fn from_ga(gate: &GateTarget, report: &GaRunReport) -> Self {
        Self {
            method: Method::Ga,
            gate: gate.label(),
            length: report.best.word.len(),
            best_word: report.best.word.clone(),
            best_d: report.best.fitness_d,
            evaluations: report.evaluations,
            wall_time_s: report.wall_time_s,
            seed: Some(report.seed),
        }
    }
}
