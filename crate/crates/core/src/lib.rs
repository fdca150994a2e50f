//! Markovian spherical averages of free-group actions.
//!
//! A labeled Markov chain over vertices `V`, with each vertex carrying a
//! free-group element, defines weighted spherical averages `S_n` of a finite
//! measure-preserving action. This crate decides admissibility of such chains,
//! implements the tail-swap maps and cocycle used to control them, and
//! computes `S_n` exactly (with a brute-force path-sum oracle) so that windowed
//! mean convergence can be observed on finite actions.

pub mod action;
pub mod admissibility;
pub mod chain;
pub mod digraph;
pub mod freegroup;
pub mod io;
pub mod operators;
pub mod rational;
pub mod tailmaps;

pub use action::{FiniteAction, Observable};
pub use admissibility::{AdmissibilityReport, GoodSubgraphCertificate};
pub use chain::{ChainError, MarkovSystem, StationaryDistribution};
pub use freegroup::{Alphabet, ReducedWord, SubgroupGraph};
pub use operators::{ConvergenceReport, LiftedObservable, System};
pub use rational::Rational;
