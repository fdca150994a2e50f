#![allow(dead_code)]

use markov_spherical::action::{ActionParts, FiniteAction, Observable};
use markov_spherical::chain::{ChainParts, MarkovSystem};
use markov_spherical::freegroup::{Alphabet, ReducedWord};
use markov_spherical::rational::{int, ratio, Rational};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> ReducedWord {
    let len = rng.random_range(0..=max_len);
    let letters = (0..len).map(|_| {
        let i = rng.random_range(1..=rank as i32);
        if rng.random_bool(0.5) {
            i
        } else {
            -i
        }
    });
    ReducedWord::reduce(letters, rank).unwrap()
}

/// Row-stochastic matrix with random small integer weights and some zeros.
fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|_| {
            let mut weights: Vec<i64> = (0..n)
                .map(|_| if rng.random_bool(0.6) { rng.random_range(1..=4) } else { 0 })
                .collect();
            if weights.iter().all(|&w| w == 0) {
                weights[rng.random_range(0..n)] = 1;
            }
            let total: i64 = weights.iter().sum();
            weights.iter().map(|&w| ratio(w, total)).collect()
        })
        .collect()
}

/// A labeled chain on at most `max_vertices` vertices whose support is strongly connected.
pub fn random_irreducible_chain<R: Rng>(rng: &mut R, max_vertices: usize, rank: usize) -> MarkovSystem {
    loop {
        let n = rng.random_range(1..=max_vertices);
        let parts = ChainParts {
            alphabet: Alphabet::standard(rank),
            vertices: (0..n).map(|v| format!("v{v}")).collect(),
            labels: (0..n).map(|_| random_word(rng, rank, 2)).collect(),
            matrix: random_matrix(rng, n),
        };
        let m = parts.build().unwrap();
        if m.strongly_connected_components().len() == 1 {
            return m;
        }
    }
}

/// Random permutations with a measure that is uniform on each orbit but varies between orbits.
pub fn random_action<R: Rng>(rng: &mut R, max_points: usize, rank: usize) -> FiniteAction {
    let n = rng.random_range(1..=max_points);
    let maps: Vec<Vec<usize>> = (0..rank)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    let probe = ActionParts {
        points: (0..n).map(|x| format!("x{x}")).collect(),
        measure: vec![ratio(1, n as i64); n],
        maps,
    };
    let orbits = probe.clone().build().unwrap().orbits();
    let orbit_weight: Vec<i64> = orbits.iter().map(|_| rng.random_range(1..=3)).collect();
    let total: i64 = orbits
        .iter()
        .zip(&orbit_weight)
        .map(|(o, w)| o.len() as i64 * w)
        .sum();
    let mut measure = vec![int(0); n];
    for (orbit, &w) in orbits.iter().zip(&orbit_weight) {
        for &x in orbit {
            measure[x] = ratio(w, total);
        }
    }
    ActionParts { measure, ..probe }.build().unwrap()
}

pub fn random_observable<R: Rng>(rng: &mut R, len: usize) -> Observable<Rational> {
    Observable::new(
        (0..len)
            .map(|_| ratio(rng.random_range(-6..=6), rng.random_range(1..=3)))
            .collect(),
    )
}

/// Every directed path with exactly `len` vertices.
pub fn directed_paths(m: &MarkovSystem, len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..m.len()).map(|v| vec![v]).collect();
    for _ in 1..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                let last = *p.last().unwrap();
                m.successors(last)
                    .iter()
                    .map(move |&next| {
                        let mut q = p.clone();
                        q.push(next);
                        q
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}
