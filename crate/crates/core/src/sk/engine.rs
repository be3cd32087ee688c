//! Base (order-0) approximators plugged into the recursion.

use crate::braid::BraidWord;
use crate::error::Result;
use crate::ga::{ga_search_matrix, GaConfig};
use crate::metric::{canonical_key, to_su2};
use crate::rng::splitmix64;
use crate::unitary::Unitary2;

/// Something the recursion can multiply, invert and measure.
pub trait Approximant: Clone + Send + Sync {
    fn matrix(&self) -> Unitary2;

    /// Evaluates to the adjoint of `self`.
    fn adjoint(&self) -> Self;

    /// The sequence for `v·w·v†·w†·u`.
    fn commutator_chain(v: &Self, w: &Self, u: &Self) -> Self;

    fn length(&self) -> usize;
}

impl Approximant for BraidWord {
    fn matrix(&self) -> Unitary2 {
        self.evaluate()
    }

    fn adjoint(&self) -> Self {
        self.inverse()
    }

    fn commutator_chain(v: &Self, w: &Self, u: &Self) -> Self {
        BraidWord::concat([v, w, &v.inverse(), &w.inverse(), u])
    }

    fn length(&self) -> usize {
        self.len()
    }
}

/// A bare matrix with a nominal word length, for engines that produce matrices
/// rather than braid words.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatrixSequence {
    pub matrix: Unitary2,
    pub length: usize,
}

impl Approximant for MatrixSequence {
    fn matrix(&self) -> Unitary2 {
        self.matrix
    }

    fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            length: self.length,
        }
    }

    fn commutator_chain(v: &Self, w: &Self, u: &Self) -> Self {
        Self {
            matrix: v.matrix * w.matrix * v.matrix.adjoint() * w.matrix.adjoint() * u.matrix,
            length: 2 * v.length + 2 * w.length + u.length,
        }
    }

    fn length(&self) -> usize {
        self.length
    }
}

#[derive(Clone, Debug)]
pub struct BaseApproximation<S> {
    pub approx: S,
    /// Distance evaluations spent finding `approx`.
    pub evaluations: u64,
}

/// An order-0 approximator producing sequences of a fixed length.
pub trait BaseEngine: Sync {
    type Output: Approximant;

    fn base_length(&self) -> usize;

    /// Must accept any unitary target, not only named gates.
    fn approximate(&self, target: &Unitary2) -> Result<BaseApproximation<Self::Output>>;
}

impl<E: BaseEngine + ?Sized> BaseEngine for &E {
    type Output = E::Output;

    fn base_length(&self) -> usize {
        (**self).base_length()
    }

    fn approximate(&self, target: &Unitary2) -> Result<BaseApproximation<Self::Output>> {
        (**self).approximate(target)
    }
}

/// Genetic search at word length `l0`.
#[derive(Clone, Debug)]
pub struct GaEngine {
    pub config: GaConfig,
}

impl GaEngine {
    /// `config.word_length` is taken as the base length.
    pub fn new(config: GaConfig) -> Self {
        Self { config }
    }
}

impl BaseEngine for GaEngine {
    type Output = BraidWord;

    fn base_length(&self) -> usize {
        self.config.word_length
    }

    fn approximate(&self, target: &Unitary2) -> Result<BaseApproximation<BraidWord>> {
        let report = ga_search_matrix(target, &self.config)?;
        Ok(BaseApproximation {
            approx: report.best.word,
            evaluations: report.evaluations,
        })
    }
}

/// How [`PerturbedEngine`] picks its rotation axis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PerturbationAxis {
    /// The target's own rotation axis (z for the identity).
    #[default]
    Own,
    /// A pseudo-random unit vector hashed from the target's canonical key.
    Hashed,
}

/// Returns the exact target composed with a rotation by `epsilon`, as a
/// controlled stand-in for a search.
#[derive(Clone, Copy, Debug)]
pub struct PerturbedEngine {
    pub epsilon: f64,
    pub base_length: usize,
    pub axis: PerturbationAxis,
}

impl PerturbedEngine {
    pub fn new(epsilon: f64, base_length: usize) -> Self {
        Self {
            epsilon,
            base_length,
            axis: PerturbationAxis::Own,
        }
    }

    pub fn perturbation_axis(&self, target: &Unitary2) -> [f64; 3] {
        match self.axis {
            PerturbationAxis::Own => to_su2(target).axis_angle().0,
            PerturbationAxis::Hashed => hashed_axis(target),
        }
    }
}

fn hashed_axis(target: &Unitary2) -> [f64; 3] {
    let h = canonical_key(target)
        .iter()
        .fold(0u64, |acc, k| splitmix64(acc ^ *k as u64));
    let u1 = (splitmix64(h) >> 11) as f64 / (1u64 << 53) as f64;
    let u2 = (splitmix64(h ^ 1) >> 11) as f64 / (1u64 << 53) as f64;
    let z = 2.0 * u1 - 1.0;
    let r = (1.0 - z * z).sqrt();
    let a = std::f64::consts::TAU * u2;
    [r * a.cos(), r * a.sin(), z]
}

impl BaseEngine for PerturbedEngine {
    type Output = MatrixSequence;

    fn base_length(&self) -> usize {
        self.base_length
    }

    fn approximate(&self, target: &Unitary2) -> Result<BaseApproximation<MatrixSequence>> {
        let r = Unitary2::rotation(self.perturbation_axis(target), self.epsilon);
        Ok(BaseApproximation {
            approx: MatrixSequence {
                matrix: *target * r,
                length: self.base_length,
            },
            evaluations: 1,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::GateTarget;
    use crate::metric::distance_phase_invariant;

    #[test]
    fn perturbation_has_the_requested_size() {
        // d(U, U·R(ε)) = sqrt(1 − cos(ε/2))
        let expect = (1.0 - 0.05f64.cos()).sqrt();
        for axis in [PerturbationAxis::Own, PerturbationAxis::Hashed] {
            let e = PerturbedEngine {
                axis,
                ..PerturbedEngine::new(0.1, 3)
            };
            for g in [GateTarget::identity(), GateTarget::h(), GateTarget::t()] {
                let a = e.approximate(&g.matrix).unwrap().approx;
                assert_eq!(a.length, 3);
                assert!((distance_phase_invariant(&g.matrix, &a.matrix) - expect).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn own_axis_commutes_with_target() {
        let e = PerturbedEngine::new(0.1, 1);
        let t = GateTarget::t().matrix;
        let a = e.approximate(&t).unwrap().approx.matrix;
        assert!((a * t).max_abs_diff(&(t * a)) < 1e-14);
    }
}
