//! Spherical averages and the induced Markov operator.
//!
//! For a chain with stationary distribution `nu` and an action `T`, the
//! spherical average of `f` is the path sum
//!
//! ```text
//! S_n f(x) = sum over paths (s_1, ..., s_n) of nu(s_n) * weight(s) * f(T_{L(s_1) ... L(s_n)} x)
//! ```
//!
//! It is computed by lifting `f` to `V x X` and applying the one-step operator
//!
//! ```text
//! (P phi)(v, x) = sum_w P[v][w] * phi(w, T_{L(v)} x)
//! ```
//!
//! `n` times, then integrating out `v` against `nu`. [`spherical_direct`] is the
//! literal path sum and serves as an exact oracle for the operator form.

use std::io;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::action::{FiniteAction, Observable, Scalar};
use crate::chain::{MarkovSystem, StationaryDistribution};
use crate::rational::{self, Rational};

/// Default longest path length enumerated by [`spherical_direct`].
pub const DEFAULT_ORACLE_CAP: usize = 8;
/// Default last `n` computed in exact arithmetic by [`convergence_series`].
pub const DEFAULT_EXACT_CAP: usize = 32;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperatorError {
    #[error("chain has rank {chain} but action has rank {action}")]
    RankMismatch { chain: usize, action: usize },
    #[error("observable has {got} values, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("path length {n} exceeds the oracle cap {cap}")]
    OracleCapExceeded { n: usize, cap: usize },
    #[error("window half-width must be at least 1")]
    ZeroWindow,
    #[error(
        "operator and path sum disagree at n = {n}, point {point}: {operator} vs {direct}"
    )]
    OracleMismatch {
        n: usize,
        point: String,
        operator: String,
        direct: String,
    },
}

/// The chain, its stationary distribution and an action of the same rank.
#[derive(Debug, Clone, Copy)]
pub struct System<'a> {
    pub chain: &'a MarkovSystem,
    pub nu: &'a StationaryDistribution,
    pub action: &'a FiniteAction,
}

impl<'a> System<'a> {
    pub fn new(
        chain: &'a MarkovSystem,
        nu: &'a StationaryDistribution,
        action: &'a FiniteAction,
    ) -> Result<Self, OperatorError> {
        if chain.rank() != action.rank() {
            return Err(OperatorError::RankMismatch {
                chain: chain.rank(),
                action: action.rank(),
            });
        }
        Ok(Self { chain, nu, action })
    }

    fn check<S>(&self, f: &Observable<S>) -> Result<(), OperatorError> {
        if f.values.len() != self.action.len() {
            return Err(OperatorError::LengthMismatch {
                got: f.values.len(),
                expected: self.action.len(),
            });
        }
        Ok(())
    }

    /// `T_{L(v)}` as a point table, one per vertex.
    fn label_maps(&self) -> Vec<Vec<usize>> {
        (0..self.chain.len())
            .map(|v| {
                let label = self.chain.label(v);
                (0..self.action.len()).map(|x| self.action.act(label, x)).collect()
            })
            .collect()
    }
}

/// A function on `V x X`, stored with `(v, x)` at index `v * |X| + x`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedObservable<S> {
    points: usize,
    values: Vec<S>,
}

impl<S: Scalar> LiftedObservable<S> {
    /// `values[v * points + x]` is the value at `(v, x)`.
    pub fn new(points: usize, values: Vec<S>) -> Self {
        assert!(points > 0 && values.len().is_multiple_of(points), "ragged lifted table");
        Self { points, values }
    }

    pub fn get(&self, v: usize, x: usize) -> &S {
        &self.values[v * self.points + x]
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn vertices(&self) -> usize {
        self.values.len() / self.points.max(1)
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// `x -> sum_v nu(v) phi(v, x)`.
    pub fn contract(&self, nu: &StationaryDistribution) -> Observable<S> {
        let nu: Vec<S> = nu.weights().iter().map(S::from_rational).collect();
        Observable::new(
            (0..self.points)
                .map(|x| {
                    nu.iter()
                        .enumerate()
                        .fold(S::zero(), |acc, (v, w)| acc + w.clone() * self.get(v, x).clone())
                })
                .collect(),
        )
    }
}

/// `phi(v, x) = f(x)`.
pub fn lift<S: Scalar>(f: &Observable<S>, vertices: usize) -> LiftedObservable<S> {
    LiftedObservable {
        points: f.values.len(),
        values: (0..vertices).flat_map(|_| f.values.iter().cloned()).collect(),
    }
}

/// One application of the induced operator, given the matrix and the label maps.
pub type StepFn<S> = dyn Fn(&[Vec<S>], &[Vec<usize>], &LiftedObservable<S>) -> LiftedObservable<S>;

/// `(P phi)(v, x) = sum_w P[v][w] phi(w, T_{L(v)} x)`.
pub fn markov_step_raw<S: Scalar>(
    matrix: &[Vec<S>],
    label_maps: &[Vec<usize>],
    phi: &LiftedObservable<S>,
) -> LiftedObservable<S> {
    let points = phi.points;
    let mut values = Vec::with_capacity(phi.values.len());
    for (v, row) in matrix.iter().enumerate() {
        for &y in &label_maps[v][..points] {
            let mut acc = S::zero();
            for (w, p) in row.iter().enumerate() {
                if !p.is_zero() {
                    acc = acc + p.clone() * phi.get(w, y).clone();
                }
            }
            values.push(acc);
        }
    }
    LiftedObservable { points, values }
}

pub fn markov_step<S: Scalar>(sys: &System, phi: &LiftedObservable<S>) -> LiftedObservable<S> {
    markov_step_raw(&scalar_matrix(sys.chain), &sys.label_maps(), phi)
}

fn scalar_matrix<S: Scalar>(m: &MarkovSystem) -> Vec<Vec<S>> {
    m.matrix()
        .iter()
        .map(|row| row.iter().map(S::from_rational).collect())
        .collect()
}

/// Iterator over `S_1 f, S_2 f, ...`, each step reusing the previous power.
pub struct SphericalSeries<'s, S: Scalar> {
    matrix: Vec<Vec<S>>,
    label_maps: Vec<Vec<usize>>,
    nu: &'s StationaryDistribution,
    phi: LiftedObservable<S>,
    step: &'s StepFn<S>,
}

impl<S: Scalar> Iterator for SphericalSeries<'_, S> {
    type Item = Observable<S>;

    fn next(&mut self) -> Option<Observable<S>> {
        self.phi = (self.step)(&self.matrix, &self.label_maps, &self.phi);
        Some(self.phi.contract(self.nu))
    }
}

pub fn spherical_series<'s, S: Scalar + 'static>(
    sys: &System<'s>,
    f: &Observable<S>,
) -> Result<SphericalSeries<'s, S>, OperatorError> {
    spherical_series_with(sys, f, &markov_step_raw::<S>)
}

/// As [`spherical_series`] with a replaceable step, for fault injection.
pub fn spherical_series_with<'s, S: Scalar>(
    sys: &System<'s>,
    f: &Observable<S>,
    step: &'s StepFn<S>,
) -> Result<SphericalSeries<'s, S>, OperatorError> {
    sys.check(f)?;
    Ok(SphericalSeries {
        matrix: scalar_matrix(sys.chain),
        label_maps: sys.label_maps(),
        nu: sys.nu,
        phi: lift(f, sys.chain.len()),
        step,
    })
}

/// `S_n f`; `S_0` is the identity.
pub fn spherical<S: Scalar + 'static>(
    sys: &System,
    f: &Observable<S>,
    n: usize,
) -> Result<Observable<S>, OperatorError> {
    sys.check(f)?;
    if n == 0 {
        return Ok(f.clone());
    }
    Ok(spherical_series(sys, f)?.nth(n - 1).expect("infinite series"))
}

/// Literal path sum over every directed path of `n` vertices, in exact arithmetic.
pub fn spherical_direct(
    sys: &System,
    f: &Observable<Rational>,
    n: usize,
    cap: usize,
) -> Result<Observable<Rational>, OperatorError> {
    sys.check(f)?;
    if n > cap {
        return Err(OperatorError::OracleCapExceeded { n, cap });
    }
    if n == 0 {
        return Ok(f.clone());
    }
    let m = sys.chain;
    let mut out = vec![Rational::zero(); sys.action.len()];
    let mut path = Vec::with_capacity(n);
    let mut visit = |path: &[usize]| {
        let weight = sys.nu.weight(*path.last().expect("nonempty")) * m.path_weight(path).expect("directed path");
        let label = m.path_label(path);
        for (x, acc) in out.iter_mut().enumerate() {
            *acc += &weight * &f.values[sys.action.act(&label, x)];
        }
    };
    for start in 0..m.len() {
        path.push(start);
        extend_paths(m, &mut path, n, &mut visit);
        path.pop();
    }
    Ok(Observable::new(out))
}

fn extend_paths(m: &MarkovSystem, path: &mut Vec<usize>, n: usize, visit: &mut impl FnMut(&[usize])) {
    if path.len() == n {
        visit(path);
        return;
    }
    let last = *path.last().expect("nonempty");
    for &next in m.successors(last) {
        path.push(next);
        extend_paths(m, path, n, visit);
        path.pop();
    }
}

/// `(1 / 2k) * sum_{i < 2k} S_{n+i} f`.
pub fn window_average<S: Scalar + 'static>(
    sys: &System,
    f: &Observable<S>,
    n: usize,
    k: usize,
) -> Result<Observable<S>, OperatorError> {
    if k == 0 {
        return Err(OperatorError::ZeroWindow);
    }
    let terms: Vec<Observable<S>> = std::iter::once(f.clone())
        .chain(spherical_series(sys, f)?)
        .skip(n)
        .take(2 * k)
        .collect();
    Ok(average(&terms))
}

fn average<S: Scalar>(terms: &[Observable<S>]) -> Observable<S> {
    let len = terms[0].values.len();
    let count = S::from_rational(&rational::int(terms.len() as i64));
    Observable::new(
        (0..len)
            .map(|x| terms.iter().fold(S::zero(), |acc, t| acc + t.values[x].clone()) / count.clone())
            .collect(),
    )
}

/// `sum_x mu(x) |f(x)|`.
pub fn l1_norm<S: Scalar>(f: &Observable<S>, mu: &[Rational]) -> S {
    mu.iter()
        .zip(&f.values)
        .fold(S::zero(), |acc, (m, v)| acc + S::from_rational(m) * v.abs())
}

/// `sum_{v, x} nu(v) mu(x) |phi(v, x)|`.
pub fn l1_norm_lifted<S: Scalar>(
    phi: &LiftedObservable<S>,
    nu: &StationaryDistribution,
    mu: &[Rational],
) -> S {
    let mut acc = S::zero();
    for (v, w) in nu.weights().iter().enumerate() {
        for (x, m) in mu.iter().enumerate() {
            acc = acc + S::from_rational(&(w * m)) * phi.get(v, x).abs();
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ErrorValue {
    Exact(Rational),
    Float(f64),
}

impl ErrorValue {
    pub fn mode(&self) -> Mode {
        match self {
            ErrorValue::Exact(_) => Mode::Exact,
            ErrorValue::Float(_) => Mode::Float,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ErrorValue::Exact(r) => rational::to_f64(r),
            ErrorValue::Float(x) => *x,
        }
    }
}

impl std::fmt::Display for ErrorValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ErrorValue::Exact(r) => f.write_str(&rational::format_rational(r)),
            ErrorValue::Float(x) => write!(f, "{x:e}"),
        }
    }
}

/// `||window_average(f, n, k) - E[f | F]||_1` for one `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub k: usize,
    pub error: ErrorValue,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    n: usize,
    k: usize,
    l1_error: String,
    mode: &'a str,
}

impl ConvergenceReport {
    /// Columns `n,k,l1_error,mode`; exact errors as `p/q`.
    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(CsvRow {
                n: row.n,
                k: row.k,
                l1_error: row.error.to_string(),
                mode: row.error.mode().as_str(),
            })?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn errors_f64(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.error.to_f64()).collect()
    }
}

/// Window errors for `n = 1..=n_max`, exact for `n <= exact_cap` and in binary floats beyond.
pub fn convergence_series(
    sys: &System,
    f: &Observable<Rational>,
    k: usize,
    n_max: usize,
    exact_cap: usize,
) -> Result<ConvergenceReport, OperatorError> {
    if k == 0 {
        return Err(OperatorError::ZeroWindow);
    }
    sys.check(f)?;
    let mu = sys.action.measure();
    let mut report = ConvergenceReport::default();
    let exact_last = n_max.min(exact_cap);
    if exact_last >= 1 {
        let target = sys.action.conditional_expectation(f);
        let terms: Vec<_> = spherical_series(sys, f)?.take(exact_last + 2 * k - 1).collect();
        for n in 1..=exact_last {
            let err = l1_norm(&average(&terms[n - 1..n - 1 + 2 * k]).sub(&target), mu);
            report.rows.push(ConvergenceRow {
                n,
                k,
                error: ErrorValue::Exact(err),
            });
        }
    }
    if n_max > exact_last {
        let g = f.to_f64();
        let target = sys.action.conditional_expectation(&g);
        // The float sweep restarts from S_1; it is cheap next to the exact one.
        let terms: Vec<_> = spherical_series(sys, &g)?.take(n_max + 2 * k - 1).collect();
        for n in exact_last + 1..=n_max {
            let err = l1_norm(&average(&terms[n - 1..n - 1 + 2 * k]).sub(&target), mu);
            report.rows.push(ConvergenceRow {
                n,
                k,
                error: ErrorValue::Float(err),
            });
        }
    }
    Ok(report)
}

/// Checks the operator form against the path sum for every `n <= cap`.
pub fn oracle_check(sys: &System, f: &Observable<Rational>, cap: usize) -> Result<(), OperatorError> {
    oracle_check_with(sys, f, cap, &markov_step_raw::<Rational>)
}

pub fn oracle_check_with(
    sys: &System,
    f: &Observable<Rational>,
    cap: usize,
    step: &StepFn<Rational>,
) -> Result<(), OperatorError> {
    for (i, fast) in spherical_series_with(sys, f, step)?.take(cap).enumerate() {
        let n = i + 1;
        let slow = spherical_direct(sys, f, n, cap)?;
        if let Some(x) = (0..fast.len()).find(|&x| fast.values[x] != slow.values[x]) {
            return Err(OperatorError::OracleMismatch {
                n,
                point: sys.action.points()[x].clone(),
                operator: rational::format_rational(&fast.values[x]),
                direct: rational::format_rational(&slow.values[x]),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{builtin_parity, builtin_zmod, ActionParts};
    use crate::chain::{builtin_uniform, ChainParts};
    use crate::freegroup::Alphabet;
    use crate::rational::{int, ratio};

    fn q(values: &[(i64, i64)]) -> Vec<Rational> {
        values.iter().map(|&(a, b)| ratio(a, b)).collect()
    }

    fn z5_f() -> Observable<Rational> {
        let mut f = Observable::indicator(5, 0);
        for v in &mut f.values {
            *v -= ratio(1, 5);
        }
        f
    }

    /// Labels `a`, `b`; `P = [[1/2, 1/2], [1, 0]]`.
    fn two_state() -> MarkovSystem {
        let ab = Alphabet::standard(2);
        ChainParts {
            alphabet: ab.clone(),
            vertices: vec!["0".into(), "1".into()],
            labels: vec![ab.parse("a").unwrap(), ab.parse("b").unwrap()],
            matrix: vec![q(&[(1, 2), (1, 2)]), q(&[(1, 1), (0, 1)])],
        }
        .build()
        .unwrap()
    }

    /// `a` swaps the two points, `b` fixes them.
    fn swap_a() -> FiniteAction {
        ActionParts {
            points: vec!["0".into(), "1".into()],
            measure: q(&[(1, 2), (1, 2)]),
            maps: vec![vec![1, 0], vec![0, 1]],
        }
        .build()
        .unwrap()
    }

    #[test]
    fn lift_shape() {
        let f = Observable::new(q(&[(1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]));
        let phi = lift(&f, 4);
        assert_eq!(phi.values().len(), 20);
        assert_eq!(phi.get(3, 4), &int(5));
        let m = builtin_uniform(2).unwrap();
        let nu = m.stationary_distribution().unwrap();
        assert_eq!(phi.contract(&nu), f);
    }

    #[test]
    fn step_matches_hand_expansion() {
        let m = two_state();
        let nu = m.stationary_distribution().unwrap();
        let a = swap_a();
        let sys = System::new(&m, &nu, &a).unwrap();
        let phi = LiftedObservable::new(2, q(&[(1, 1), (2, 1), (3, 1), (5, 1)]));
        let once = markov_step(&sys, &phi);
        assert_eq!(once.values(), q(&[(7, 2), (2, 1), (1, 1), (2, 1)]).as_slice());
        let twice = markov_step(&sys, &once);
        assert_eq!(twice.values(), q(&[(2, 1), (9, 4), (7, 2), (2, 1)]).as_slice());
    }

    #[test]
    fn single_vertex_step_is_composition() {
        let ab = Alphabet::standard(2);
        let m = ChainParts {
            alphabet: ab.clone(),
            vertices: vec!["v".into()],
            labels: vec![ab.parse("a").unwrap()],
            matrix: vec![vec![int(1)]],
        }
        .build()
        .unwrap();
        let nu = m.stationary_distribution().unwrap();
        let z5 = builtin_zmod(5, 2).unwrap();
        let sys = System::new(&m, &nu, &z5).unwrap();
        let phi = lift(&Observable::new((0..5).map(int).collect()), 1);
        let stepped = markov_step(&sys, &phi);
        assert_eq!(stepped.values(), [1, 2, 3, 4, 0].map(int).as_slice());
    }

    #[test]
    fn constants_are_fixed() {
        let m = builtin_uniform(2).unwrap();
        let nu = m.stationary_distribution().unwrap();
        let z5 = builtin_zmod(5, 2).unwrap();
        let sys = System::new(&m, &nu, &z5).unwrap();
        let one = Observable::constant(5, int(1));
        let phi = lift(&one, 4);
        assert_eq!(markov_step(&sys, &phi), phi);
        for n in 0..6 {
            assert_eq!(spherical(&sys, &one, n).unwrap(), one);
        }
        assert_eq!(window_average(&sys, &one, 3, 2).unwrap(), one);
    }

    #[test]
    fn parity_alternates() {
        let m = builtin_uniform(2).unwrap();
        let nu = m.stationary_distribution().unwrap();
        let par = builtin_parity(2);
        let sys = System::new(&m, &nu, &par).unwrap();
        let f = Observable::new(vec![int(1), int(-1)]);
        let neg = Observable::new(vec![int(-1), int(1)]);
        for (i, s) in spherical_series(&sys, &f).unwrap().take(6).enumerate() {
            assert_eq!(s, if i % 2 == 0 { neg.clone() } else { f.clone() });
        }
        for n in 1..8 {
            assert_eq!(window_average(&sys, &f, n, 1).unwrap(), Observable::constant(2, int(0)));
        }
    }

    #[test]
    fn z5_spheres_frozen() {
        let m = builtin_uniform(2).unwrap();
        let nu = m.stationary_distribution().unwrap();
        let z5 = builtin_zmod(5, 2).unwrap();
        let sys = System::new(&m, &nu, &z5).unwrap();
        let f = z5_f();
        let mu = z5.measure();
        assert_eq!(
            spherical(&sys, &f, 1).unwrap().values,
            q(&[(3, 10), (1, 20), (-1, 5), (-1, 5), (1, 20)])
        );
        let norms: Vec<Rational> = spherical_series(&sys, &f)
            .unwrap()
            .take(4)
            .map(|s| l1_norm(&s, mu))
            .collect();
        assert_eq!(norms, q(&[(4, 25), (1, 25), (13, 225), (19, 675)]));
        assert!(norms[1] < l1_norm(&f, mu));
        assert_eq!(l1_norm(&f, mu), ratio(8, 25));
    }

    #[test]
    fn z5_window_errors_frozen() {
        let m = builtin_uniform(2).unwrap();
        let nu = m.stationary_distribution().unwrap();
        let z5 = builtin_zmod(5, 2).unwrap();
        let sys = System::new(&m, &nu, &z5).unwrap();
        let report = convergence_series(&sys, &z5_f(), 1, 9, DEFAULT_EXACT_CAP).unwrap();
        let expected = q(&[
            (3, 50),
            (1, 25),
            (29, 675),
            (49, 4050),
            (83, 12150),
            (142, 18225),
            (151, 54675),
            (197, 164025),
            (1507, 984150),
        ]);
        let got: Vec<Rational> = report
            .rows
            .iter()
            .map(|r| match &r.error {
                ErrorValue::Exact(e) => e.clone(),
                ErrorValue::Float(_) => panic!("expected exact rows"),
            })
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn float_rows_follow_exact_rows() {
        let m = builtin_uniform(2).unwrap();
        let nu = m.stationary_distribution().unwrap();
        let z5 = builtin_zmod(5, 2).unwrap();
        let sys = System::new(&m, &nu, &z5).unwrap();
        let exact = convergence_series(&sys, &z5_f(), 1, 12, 12).unwrap();
        let mixed = convergence_series(&sys, &z5_f(), 1, 12, 4).unwrap();
        let modes: Vec<Mode> = mixed.rows.iter().map(|r| r.error.mode()).collect();
        assert_eq!(modes[..4], [Mode::Exact; 4]);
        assert_eq!(modes[4..], [Mode::Float; 8]);
        for (a, b) in exact.errors_f64().iter().zip(mixed.errors_f64()) {
            assert!((a - b).abs() < 1e-15);
        }
        let last = convergence_series(&sys, &z5_f(), 1, 100, DEFAULT_EXACT_CAP).unwrap();
        assert!(last.rows[99].error.to_f64() <= 1e-6);
    }

    #[test]
    fn invariant_observable_has_zero_error() {
        let m = builtin_uniform(2).unwrap();
        let nu = m.stationary_distribution().unwrap();
        let z5 = builtin_zmod(5, 2).unwrap();
        let sys = System::new(&m, &nu, &z5).unwrap();
        let f = Observable::constant(5, ratio(2, 7));
        let report = convergence_series(&sys, &f, 2, 10, 5).unwrap();
        assert!(report.errors_f64().iter().all(|&e| e == 0.0));
    }

    #[test]
    fn csv_layout() {
        let m = builtin_uniform(2).unwrap();
        let nu = m.stationary_distribution().unwrap();
        let z5 = builtin_zmod(5, 2).unwrap();
        let sys = System::new(&m, &nu, &z5).unwrap();
        let report = convergence_series(&sys, &z5_f(), 1, 3, 2).unwrap();
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,k,l1_error,mode");
        assert_eq!(lines[1], "1,1,3/50,exact");
        assert_eq!(lines[2], "2,1,1/25,exact");
        assert!(lines[3].starts_with("3,1,") && lines[3].ends_with(",float"));
    }

    #[test]
    fn direct_sum_base_case_and_cap() {
        let m = two_state();
        let nu = m.stationary_distribution().unwrap();
        let a = swap_a();
        let sys = System::new(&m, &nu, &a).unwrap();
        let f = Observable::new(vec![int(1), int(0)]);
        // nu = (2/3, 1/3): S_1 f(0) = 2/3 f(1) + 1/3 f(0).
        assert_eq!(spherical_direct(&sys, &f, 1, 8).unwrap().values, q(&[(1, 3), (2, 3)]));
        assert_eq!(
            spherical_direct(&sys, &f, 9, 8),
            Err(OperatorError::OracleCapExceeded { n: 9, cap: 8 })
        );
        oracle_check(&sys, &f, 6).unwrap();
    }

    #[test]
    fn oracle_rejects_faulty_step() {
        let m = builtin_uniform(2).unwrap();
        let nu = m.stationary_distribution().unwrap();
        let z5 = builtin_zmod(5, 2).unwrap();
        let sys = System::new(&m, &nu, &z5).unwrap();
        let ignore_action = |matrix: &[Vec<Rational>], _: &[Vec<usize>], phi: &LiftedObservable<Rational>| {
            let identity = vec![(0..phi.points()).collect(); matrix.len()];
            markov_step_raw(matrix, &identity, phi)
        };
        let err = oracle_check_with(&sys, &z5_f(), 4, &ignore_action).unwrap_err();
        assert!(matches!(err, OperatorError::OracleMismatch { n: 1, .. }), "{err}");
        oracle_check(&sys, &z5_f(), 5).unwrap();
    }

    #[test]
    fn norms() {
        let mu = q(&[(1, 2), (1, 2)]);
        assert_eq!(l1_norm(&Observable::constant(2, int(0)), &mu), int(0));
        assert_eq!(l1_norm(&Observable::new(vec![int(1), int(-1)]), &mu), int(1));
        let m = two_state();
        let nu = m.stationary_distribution().unwrap();
        let phi = LiftedObservable::new(2, q(&[(1, 1), (-1, 1), (3, 1), (0, 1)]));
        // 2/3 * (1/2 + 1/2) + 1/3 * 3/2
        assert_eq!(l1_norm_lifted(&phi, &nu, &mu), ratio(7, 6));
    }

    #[test]
    fn rank_mismatch() {
        let m = builtin_uniform(3).unwrap();
        let nu = m.stationary_distribution().unwrap();
        let par = builtin_parity(2);
        assert_eq!(
            System::new(&m, &nu, &par).unwrap_err(),
            OperatorError::RankMismatch { chain: 3, action: 2 }
        );
    }
}
