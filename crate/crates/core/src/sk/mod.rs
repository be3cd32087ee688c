//! Solovay-Kitaev recursion over a fixed-length base search.
//!
//! At order `n` the compiler approximates the target at order `n − 1`, splits
//! the residual `Δ = U·Uₙ₋₁†` into a balanced group commutator `V·W·V†·W†`,
//! approximates `V` and `W` at order `n − 1` and returns the word
//! `Vₙ₋₁ Wₙ₋₁ Vₙ₋₁† Wₙ₋₁† Uₙ₋₁`. Word length grows as `l₀·5ⁿ` and the number
//! of base searches as `3ⁿ` (fewer when the cache hits).

mod engine;
mod gc;

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Generator};
use crate::error::{Error, Result};
use crate::gate::GateTarget;
use crate::metric::{canonical_key, Metric};
use crate::unitary::Unitary2;

pub use engine::{
    Approximant, BaseApproximation, BaseEngine, GaEngine, MatrixSequence, PerturbationAxis,
    PerturbedEngine,
};
pub use gc::{
    align, commutator_angle, gc_decompose, group_commutator, phase_aligned_error, GcPair,
    MAX_DELTA_DISTANCE,
};

/// `(5ⁿ, 3ⁿ)`: word-length and base-call multipliers at order `n`.
pub fn recursion_cost(n: u32) -> (u64, u64) {
    (5u64.pow(n), 3u64.pow(n))
}

/// Reversed word with each letter inverted.
pub fn inverse_word(w: &BraidWord) -> BraidWord {
    w.inverse()
}

#[derive(Clone, Debug)]
pub struct SkResult<S = BraidWord> {
    pub approx: S,
    /// Distance of `approx` to the target under the configured metric.
    pub distance: f64,
    pub order: usize,
    pub length: usize,
    /// Distance of the order-`k` approximation on the main chain, `k = 0..=order`.
    pub child_distances: Vec<f64>,
    /// True when some order is worse than the one below it.
    pub non_monotone: bool,
    /// Base-engine invocations (cache hits excluded).
    pub base_calls: u64,
    pub evaluations: u64,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkResultJson {
    pub gate: String,
    pub l0: usize,
    pub order: usize,
    pub length: usize,
    pub d: f64,
    pub word: BraidWord,
    pub child_distances: Vec<f64>,
}

impl SkResult<BraidWord> {
    pub fn word(&self) -> &BraidWord {
        &self.approx
    }

    /// Letters of the order-`k` approximation. The main chain ends every
    /// higher-order word, so this is a suffix of the full word.
    pub fn order_word(&self, k: usize) -> &[Generator] {
        assert!(
            k <= self.order,
            "order {k} exceeds compiled order {}",
            self.order
        );
        let l0 = self.length / 5usize.pow(self.order as u32);
        let len = l0 * 5usize.pow(k as u32);
        &self.approx.letters()[self.length - len..]
    }

    /// The word after cancelling adjacent inverse pairs.
    pub fn simplified(&self) -> BraidWord {
        self.approx.simplify()
    }

    pub fn to_json(&self, gate: &GateTarget) -> SkResultJson {
        SkResultJson {
            gate: gate.label(),
            l0: self.length / 5usize.pow(self.order as u32),
            order: self.order,
            length: self.length,
            d: self.distance,
            word: self.approx.clone(),
            child_distances: self.child_distances.clone(),
        }
    }
}

#[derive(Clone)]
struct Node<S> {
    approx: S,
    distances: Vec<f64>,
}

type CacheKey = ([i64; 8], usize);

struct Run<'a, E: BaseEngine> {
    engine: &'a E,
    metric: Metric,
    cache: Option<Mutex<HashMap<CacheKey, Node<E::Output>>>>,
    base_calls: AtomicU64,
    evaluations: AtomicU64,
}

impl<E: BaseEngine> Run<'_, E> {
    fn recurse(&self, target: &Unitary2, depth: usize) -> Result<Node<E::Output>> {
        let key = (canonical_key(target), depth);
        if let Some(cache) = &self.cache {
            if let Some(hit) = cache.lock().get(&key) {
                return Ok(hit.clone());
            }
        }
        let node = if depth == 0 {
            let base = self.engine.approximate(target)?;
            self.base_calls.fetch_add(1, Ordering::Relaxed);
            self.evaluations
                .fetch_add(base.evaluations, Ordering::Relaxed);
            let d = self.metric.distance(target, &base.approx.matrix());
            Node {
                approx: base.approx,
                distances: vec![d],
            }
        } else {
            let prev = self.recurse(target, depth - 1)?;
            let delta = *target * prev.approx.matrix().adjoint();
            let pair = gc_decompose(&delta).map_err(|e| Error::Recursion {
                order: depth,
                source: Box::new(e),
            })?;
            let (v, w) = rayon::join(
                || self.recurse(&pair.v, depth - 1),
                || self.recurse(&pair.w, depth - 1),
            );
            let (v, w) = (v?, w?);
            let approx = E::Output::commutator_chain(&v.approx, &w.approx, &prev.approx);
            let mut distances = prev.distances;
            distances.push(self.metric.distance(target, &approx.matrix()));
            Node { approx, distances }
        };
        if let Some(cache) = &self.cache {
            // Identical keys produce value-equal nodes, so either insert may win.
            cache.lock().entry(key).or_insert_with(|| node.clone());
        }
        Ok(node)
    }
}

/// Solovay-Kitaev compiler around a base engine.
pub struct SkCompiler<E> {
    pub engine: E,
    pub metric: Metric,
    /// Memoise `(target, depth)` within one compile.
    pub cache: bool,
}

impl<E: BaseEngine> SkCompiler<E> {
    pub fn new(engine: E) -> Self {
        Self {
            engine,
            metric: Metric::PhaseInvariant,
            cache: true,
        }
    }

    pub fn with_metric(mut self, metric: Metric) -> Self {
        self.metric = metric;
        self
    }

    pub fn with_cache(mut self, cache: bool) -> Self {
        self.cache = cache;
        self
    }

    pub fn base_length(&self) -> usize {
        self.engine.base_length()
    }

    pub fn compile(&self, target: &Unitary2, order: usize) -> Result<SkResult<E::Output>> {
        let start = Instant::now();
        let run = Run {
            engine: &self.engine,
            metric: self.metric,
            cache: self.cache.then(|| Mutex::new(HashMap::new())),
            base_calls: AtomicU64::new(0),
            evaluations: AtomicU64::new(0),
        };
        let node = run.recurse(target, order)?;
        let length = node.approx.length();
        debug_assert_eq!(length, self.base_length() * 5usize.pow(order as u32));
        let non_monotone = node.distances.windows(2).any(|p| p[1] > p[0]);
        Ok(SkResult {
            distance: self.metric.distance(target, &node.approx.matrix()),
            approx: node.approx,
            order,
            length,
            child_distances: node.distances,
            non_monotone,
            base_calls: run.base_calls.into_inner(),
            evaluations: run.evaluations.into_inner(),
            wall_time_s: start.elapsed().as_secs_f64(),
        })
    }
}

/// Compiles `target` to order `depth` with the given base engine.
pub fn solovay_kitaev<E: BaseEngine>(
    target: &GateTarget,
    engine: E,
    depth: usize,
) -> Result<SkResult<E::Output>> {
    SkCompiler::new(engine).compile(&target.matrix, depth)
}
