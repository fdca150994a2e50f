//! Finite measure-preserving actions of a free group.
//!
//! Each generator acts by a permutation of a finite probability space. Words
//! act as a left action: `T_{uv} = T_u . T_v`, so the rightmost letter of a word
//! is applied first.

use std::collections::VecDeque;
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::freegroup::ReducedWord;
use crate::rational::{self, Rational};

/// A number type the averaging code can run in: exact rationals or binary floats.
pub trait Scalar: Signed + Clone + PartialOrd + fmt::Debug + fmt::Display {
    fn from_rational(value: &Rational) -> Self;
    fn to_f64(&self) -> f64;
}

impl Scalar for Rational {
    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn to_f64(&self) -> f64 {
        rational::to_f64(self)
    }
}

impl Scalar for f64 {
    fn from_rational(value: &Rational) -> Self {
        rational::to_f64(value)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// A function on the points of an action.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable<S> {
    pub values: Vec<S>,
}

impl<S: Scalar> Observable<S> {
    pub fn new(values: Vec<S>) -> Self {
        Self { values }
    }

    pub fn constant(len: usize, c: S) -> Self {
        Self {
            values: vec![c; len],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn to_f64(&self) -> Observable<f64> {
        Observable::new(self.values.iter().map(Scalar::to_f64).collect())
    }
}

impl Observable<Rational> {
    /// `1` at `point`, `0` elsewhere.
    pub fn indicator(len: usize, point: usize) -> Self {
        Self::new(
            (0..len)
                .map(|i| if i == point { rational::int(1) } else { Rational::zero() })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("malformed action: {0}")]
    Malformed(String),
    #[error("action fails validation: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<ActionDiagnostic>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionDiagnostic {
    NegativeMass { point: String, value: Rational },
    MassSum(Rational),
    NotBijective { generator: usize, missing: String },
    MeasureNotPreserved { generator: usize, point: String, image: String },
}

impl fmt::Display for ActionDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NegativeMass { point, value } => write!(f, "point {point} has negative mass {value}"),
            Self::MassSum(s) => write!(f, "masses sum to {s}, not 1"),
            Self::NotBijective { generator, missing } => {
                write!(f, "generator {generator} is not a bijection: {missing} has no preimage")
            }
            Self::MeasureNotPreserved {
                generator,
                point,
                image,
            } => write!(
                f,
                "generator {generator} sends {point} to {image} with a different mass"
            ),
        }
    }
}

/// Raw action data: `maps[i][x]` is the image of point `x` under generator `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionParts {
    pub points: Vec<String>,
    pub measure: Vec<Rational>,
    pub maps: Vec<Vec<usize>>,
}

impl ActionParts {
    /// Shape errors are returned as `Err`; measure and bijectivity problems as diagnostics.
    pub fn validate(&self) -> Result<Vec<ActionDiagnostic>, ActionError> {
        let n = self.points.len();
        if n == 0 {
            return Err(ActionError::Malformed("no points".into()));
        }
        if self.measure.len() != n {
            return Err(ActionError::Malformed(format!(
                "{} masses for {n} points",
                self.measure.len()
            )));
        }
        for (i, map) in self.maps.iter().enumerate() {
            if map.len() != n {
                return Err(ActionError::Malformed(format!(
                    "generator {} maps {} points, expected {n}",
                    i + 1,
                    map.len()
                )));
            }
            if let Some(&bad) = map.iter().find(|&&y| y >= n) {
                return Err(ActionError::Malformed(format!(
                    "generator {} has image index {bad} out of range",
                    i + 1
                )));
            }
        }
        let mut out = Vec::new();
        for (x, m) in self.measure.iter().enumerate() {
            if m.is_negative() {
                out.push(ActionDiagnostic::NegativeMass {
                    point: self.points[x].clone(),
                    value: m.clone(),
                });
            }
        }
        let total: Rational = self.measure.iter().sum();
        if total != rational::one() {
            out.push(ActionDiagnostic::MassSum(total));
        }
        for (i, map) in self.maps.iter().enumerate() {
            let mut hit = vec![false; n];
            for &y in map {
                hit[y] = true;
            }
            if let Some(missing) = hit.iter().position(|h| !h) {
                out.push(ActionDiagnostic::NotBijective {
                    generator: i + 1,
                    missing: self.points[missing].clone(),
                });
                continue;
            }
            for (x, &y) in map.iter().enumerate() {
                if self.measure[x] != self.measure[y] {
                    out.push(ActionDiagnostic::MeasureNotPreserved {
                        generator: i + 1,
                        point: self.points[x].clone(),
                        image: self.points[y].clone(),
                    });
                }
            }
        }
        Ok(out)
    }

    pub fn build(self) -> Result<FiniteAction, ActionError> {
        let diagnostics = self.validate()?;
        if !diagnostics.is_empty() {
            return Err(ActionError::Invalid(diagnostics));
        }
        let inverses = self
            .maps
            .iter()
            .map(|map| {
                let mut inv = vec![0; map.len()];
                for (x, &y) in map.iter().enumerate() {
                    inv[y] = x;
                }
                inv
            })
            .collect();
        Ok(FiniteAction {
            parts: self,
            inverses,
        })
    }
}

/// A validated action; see [`ActionParts`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAction {
    parts: ActionParts,
    inverses: Vec<Vec<usize>>,
}

impl FiniteAction {
    pub fn rank(&self) -> usize {
        self.parts.maps.len()
    }

    pub fn len(&self) -> usize {
        self.parts.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.parts.points
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.parts.points.iter().position(|p| p == name)
    }

    pub fn measure(&self) -> &[Rational] {
        &self.parts.measure
    }

    pub fn parts(&self) -> &ActionParts {
        &self.parts
    }

    /// Image of `x` under a single signed letter.
    pub fn apply_letter(&self, letter: i32, x: usize) -> usize {
        let i = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            self.parts.maps[i][x]
        } else {
            self.inverses[i][x]
        }
    }

    /// `T_w x`.
    pub fn act(&self, w: &ReducedWord, x: usize) -> usize {
        assert_eq!(w.rank(), self.rank(), "word and action ranks differ");
        w.letters()
            .iter()
            .rev()
            .fold(x, |y, &l| self.apply_letter(l, y))
    }

    /// Orbits of the group generated by the maps, each sorted, ordered by first point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for map in self.parts.maps.iter().chain(&self.inverses) {
                    let y = map[x];
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                        queue.push_back(y);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Orbit-wise `mu`-average of `f`; zero on orbits of mass zero.
    pub fn conditional_expectation<S: Scalar>(&self, f: &Observable<S>) -> Observable<S> {
        let mut out = vec![S::zero(); self.len()];
        for orbit in self.orbits() {
            let mass: Rational = orbit.iter().map(|&x| &self.parts.measure[x]).sum();
            if mass.is_zero() {
                continue;
            }
            let total = orbit.iter().fold(S::zero(), |acc, &x| {
                acc + S::from_rational(&self.parts.measure[x]) * f.values[x].clone()
            });
            let value = total / S::from_rational(&mass);
            for &x in &orbit {
                out[x] = value.clone();
            }
        }
        Observable::new(out)
    }

    /// `sum_x mu(x) f(x)`.
    pub fn integral<S: Scalar>(&self, f: &Observable<S>) -> S {
        self.parts
            .measure
            .iter()
            .zip(&f.values)
            .fold(S::zero(), |acc, (m, v)| acc + S::from_rational(m) * v.clone())
    }

    /// Some orbit carries all of the mass.
    pub fn is_ergodic(&self) -> bool {
        self.orbits().iter().any(|orbit| {
            orbit.iter().map(|&x| &self.parts.measure[x]).sum::<Rational>() == rational::one()
        })
    }
}

fn uniform(n: usize) -> Vec<Rational> {
    vec![rational::ratio(1, n as i64); n]
}

/// Two points swapped by every generator.
pub fn builtin_parity(rank: usize) -> FiniteAction {
    ActionParts {
        points: vec!["0".into(), "1".into()],
        measure: uniform(2),
        maps: vec![vec![1, 0]; rank],
    }
    .build()
    .expect("parity action is valid")
}

/// `Z/n` with uniform measure: odd-numbered generators act by `x + 1`, even-numbered ones by `2x`.
pub fn builtin_zmod(n: usize, rank: usize) -> Result<FiniteAction, ActionError> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(ActionError::Malformed(format!(
            "zmod needs an odd modulus so that doubling is invertible, got {n}"
        )));
    }
    let maps = (1..=rank)
        .map(|i| {
            (0..n)
                .map(|x| if i % 2 == 1 { (x + 1) % n } else { (2 * x) % n })
                .collect()
        })
        .collect();
    ActionParts {
        points: (0..n).map(|x| x.to_string()).collect(),
        measure: uniform(n),
        maps,
    }
    .build()
}
