//! Shared fixtures for the benchmarks.

use markov_spherical::action::{builtin_zmod, FiniteAction, Observable};
use markov_spherical::chain::builtin_uniform;
use markov_spherical::rational::{ratio, Rational};
use markov_spherical::MarkovSystem;

/// Uniform chain of rank 2 acting on `Z/n`, with `f = 1_{0} - 1/n`.
pub fn zmod_benchmark(n: usize) -> (MarkovSystem, FiniteAction, Observable<Rational>) {
    let m = builtin_uniform(2).expect("rank 2");
    let a = builtin_zmod(n, 2).expect("odd modulus");
    let mut f = Observable::indicator(n, 0);
    for v in &mut f.values {
        *v -= ratio(1, n as i64);
    }
    (m, a, f)
}
