//! Compiles single-qubit gates into braid words over the elementary braids of
//! three Fibonacci anyons.
//!
//! The main entry point is [`sk::SkCompiler`], a Solovay-Kitaev recursion over a
//! fixed-length base search. Base searches available: the genetic search in
//! [`ga`], and the exhaustive, meet-in-the-middle and annealing searches in
//! [`baselines`].

pub mod baselines;
pub mod braid;
pub mod error;
pub mod ga;
pub mod gate;
pub mod metric;
pub mod rng;
pub mod sk;
pub mod unitary;

pub use braid::{Alphabet, BraidWord, Generator};
pub use error::{Error, ParseError, Result};
pub use gate::{GateName, GateTarget};
pub use metric::{distance_phase_invariant, distance_quaternion, Metric, Quaternion};
pub use unitary::Unitary2;
