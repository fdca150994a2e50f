//! Labeled Markov systems.
//!
//! A [`MarkovSystem`] is a finite vertex set `V`, a labeling of each vertex by
//! a free-group element and a row-stochastic matrix `P` with exact rational
//! entries. The associated directed graph is *reversed* relative to the
//! matrix: `(a, b)` is an edge iff `P[b][a] > 0`, so a directed path
//! `(s_1, ..., s_n)` is read by the chain from `s_n` down to `s_1`. Its weight
//! is `P[s_n][s_{n-1}] * ... * P[s_2][s_1]`.
//!
//! The stationary distribution is the left fixed vector
//! `sum_w nu(w) P[w][v] = nu(v)`, which is the convention making the cylinder
//! measure `nu(t_n) * weight(t)` additive.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::digraph;
use crate::freegroup::{Alphabet, ReducedWord, WordError};
use crate::rational::{self, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("malformed chain: {0}")]
    Malformed(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("chain fails validation: {}", join(.0))]
    Invalid(Vec<ChainDiagnostic>),
    #[error("support of the matrix is reducible; strongly connected components: {components:?}")]
    Reducible { components: Vec<Vec<String>> },
    #[error("sequence is not a directed path: no edge ({from}, {to}) at position {position}")]
    NotAPath {
        position: usize,
        from: String,
        to: String,
    },
    #[error("vertex index {0} out of range")]
    UnknownVertex(usize),
    #[error("builtin uniform chain needs rank >= 2, got {0}")]
    RankTooSmall(usize),
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// A violated stochastic-matrix axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainDiagnostic {
    NegativeEntry {
        row: String,
        col: String,
        value: Rational,
    },
    RowSum {
        row: String,
        sum: Rational,
    },
}

impl fmt::Display for ChainDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NegativeEntry { row, col, value } => {
                write!(f, "negative entry {value} at ({row}, {col})")
            }
            Self::RowSum { row, sum } => write!(f, "row {row} sums to {sum}, expected 1"),
        }
    }
}

/// Unvalidated chain data, as read from a file.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainParts {
    pub alphabet: Alphabet,
    pub vertices: Vec<String>,
    pub labels: Vec<ReducedWord>,
    pub matrix: Vec<Vec<Rational>>,
}

impl ChainParts {
    fn check_shape(&self) -> Result<(), ChainError> {
        let n = self.vertices.len();
        if n == 0 {
            return Err(ChainError::Malformed("vertex set is empty".into()));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return Err(ChainError::Malformed(format!("duplicate vertex {v:?}")));
            }
        }
        if self.labels.len() != n {
            return Err(ChainError::Malformed(format!(
                "{} labels for {n} vertices",
                self.labels.len()
            )));
        }
        if let Some(bad) = self
            .labels
            .iter()
            .find(|l| l.rank() != self.alphabet.rank())
        {
            return Err(WordError::RankMismatch {
                left: self.alphabet.rank(),
                right: bad.rank(),
            }
            .into());
        }
        if self.matrix.len() != n || self.matrix.iter().any(|row| row.len() != n) {
            return Err(ChainError::Malformed(format!("matrix must be {n}x{n}")));
        }
        Ok(())
    }

    /// Checks nonnegativity and exact unit row sums. Shape errors are returned as `Err`.
    pub fn validate(&self) -> Result<Vec<ChainDiagnostic>, ChainError> {
        self.check_shape()?;
        let mut out = Vec::new();
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, value) in row.iter().enumerate() {
                if value.is_negative() {
                    out.push(ChainDiagnostic::NegativeEntry {
                        row: self.vertices[i].clone(),
                        col: self.vertices[j].clone(),
                        value: value.clone(),
                    });
                }
            }
            let sum: Rational = row.iter().sum();
            if sum != rational::one() {
                out.push(ChainDiagnostic::RowSum {
                    row: self.vertices[i].clone(),
                    sum,
                });
            }
        }
        Ok(out)
    }

    pub fn build(self) -> Result<MarkovSystem, ChainError> {
        let diagnostics = self.validate()?;
        if !diagnostics.is_empty() {
            return Err(ChainError::Invalid(diagnostics));
        }
        let n = self.vertices.len();
        let mut successors = vec![Vec::new(); n];
        for (b, row) in self.matrix.iter().enumerate() {
            for (a, value) in row.iter().enumerate() {
                if rational::is_positive(value) {
                    successors[a].push(b);
                }
            }
        }
        for s in &mut successors {
            s.sort_unstable();
        }
        Ok(MarkovSystem {
            parts: self,
            successors,
        })
    }
}

/// A validated labeled Markov system.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovSystem {
    parts: ChainParts,
    /// `successors[a]` lists the `b` with `(a, b)` an edge, i.e. `P[b][a] > 0`.
    successors: Vec<Vec<usize>>,
}

impl MarkovSystem {
    pub fn alphabet(&self) -> &Alphabet {
        &self.parts.alphabet
    }

    pub fn rank(&self) -> usize {
        self.parts.alphabet.rank()
    }

    pub fn len(&self) -> usize {
        self.parts.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.parts.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.parts.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.parts.vertices.iter().position(|v| v == name)
    }

    pub fn label(&self, v: usize) -> &ReducedWord {
        &self.parts.labels[v]
    }

    pub fn labels(&self) -> &[ReducedWord] {
        &self.parts.labels
    }

    /// `P[from][to]`.
    pub fn entry(&self, from: usize, to: usize) -> &Rational {
        &self.parts.matrix[from][to]
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.parts.matrix
    }

    pub fn parts(&self) -> &ChainParts {
        &self.parts
    }

    /// `(a, b)` is an edge iff `P[b][a] > 0`.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        rational::is_positive(&self.parts.matrix[b][a])
    }

    /// Graph successors, in vertex order.
    pub fn successors(&self, a: usize) -> &[usize] {
        &self.successors[a]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.successors
    }

    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(a, succ)| succ.iter().map(move |&b| (a, b)))
            .collect()
    }

    pub fn is_path(&self, seq: &[usize]) -> bool {
        !seq.is_empty()
            && seq.iter().all(|&v| v < self.len())
            && seq.windows(2).all(|p| self.has_edge(p[0], p[1]))
    }

    fn check_path(&self, seq: &[usize]) -> Result<(), ChainError> {
        if seq.is_empty() {
            return Err(ChainError::Malformed("empty path".into()));
        }
        if let Some(&bad) = seq.iter().find(|&&v| v >= self.len()) {
            return Err(ChainError::UnknownVertex(bad));
        }
        for (i, pair) in seq.windows(2).enumerate() {
            if !self.has_edge(pair[0], pair[1]) {
                return Err(ChainError::NotAPath {
                    position: i + 1,
                    from: self.vertex_name(pair[0]).into(),
                    to: self.vertex_name(pair[1]).into(),
                });
            }
        }
        Ok(())
    }

    /// `P[s_n][s_{n-1}] ... P[s_2][s_1]`; 1 for a single vertex.
    pub fn path_weight(&self, seq: &[usize]) -> Result<Rational, ChainError> {
        self.check_path(seq)?;
        Ok(self.sequence_weight(seq))
    }

    /// The same product for an arbitrary sequence of valid indices (zero off the graph).
    pub fn sequence_weight(&self, seq: &[usize]) -> Rational {
        seq.windows(2)
            .map(|p| &self.parts.matrix[p[1]][p[0]])
            .fold(rational::one(), |acc, e| acc * e)
    }

    /// `L(s_1) ... L(s_n)`.
    pub fn path_label(&self, seq: &[usize]) -> ReducedWord {
        ReducedWord::product(self.rank(), seq.iter().map(|&v| &self.parts.labels[v]))
    }

    /// Cylinder measure `nu(t_n) * weight(t)`; zero for sequences that are not paths.
    pub fn cylinder_measure(&self, nu: &StationaryDistribution, seq: &[usize]) -> Rational {
        if !self.is_path(seq) {
            return Rational::zero();
        }
        nu.weight(*seq.last().expect("nonempty")) * self.sequence_weight(seq)
    }

    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        digraph::strongly_connected_components(&self.successors)
    }

    /// Unique positive solution of `sum_w nu(w) P[w][v] = nu(v)`, `sum nu = 1`.
    pub fn stationary_distribution(&self) -> Result<StationaryDistribution, ChainError> {
        let components = self.strongly_connected_components();
        if components.len() != 1 {
            return Err(ChainError::Reducible {
                components: components
                    .into_iter()
                    .map(|c| c.into_iter().map(|v| self.vertex_name(v).into()).collect())
                    .collect(),
            });
        }
        let n = self.len();
        // Rows: (P^T - I) nu = 0 for v in 0..n, then sum nu = 1.
        let mut system: Vec<Vec<Rational>> = (0..n)
            .map(|v| {
                let mut row: Vec<Rational> =
                    (0..n).map(|w| self.parts.matrix[w][v].clone()).collect();
                row[v] -= rational::one();
                row.push(Rational::zero());
                row
            })
            .collect();
        let mut norm = vec![rational::one(); n];
        norm.push(rational::one());
        system.push(norm);
        let (solution, rank) = solve_exact(system, n);
        let weights = solution.ok_or_else(|| {
            ChainError::Malformed("stationary system is inconsistent".into())
        })?;
        debug_assert_eq!(rank, n, "irreducible chains have a one-dimensional fixed space");
        if rank != n || weights.iter().any(|w| !rational::is_positive(w)) {
            return Err(ChainError::Malformed(
                "stationary distribution is not unique and positive".into(),
            ));
        }
        Ok(StationaryDistribution { weights })
    }
}

/// Gauss-Jordan elimination on an augmented matrix with `unknowns` columns
/// plus a right-hand side. Returns the solution (free variables set to zero)
/// if consistent, and the rank of the coefficient matrix.
pub(crate) fn solve_exact(
    mut rows: Vec<Vec<Rational>>,
    unknowns: usize,
) -> (Option<Vec<Rational>>, usize) {
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x /= &pivot;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                let (src, dst) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= &factor * s;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let rank = r;
    if rows[rank..].iter().any(|row| !row[unknowns].is_zero()) {
        return (None, rank);
    }
    let mut solution = vec![Rational::zero(); unknowns];
    for (i, &c) in pivot_cols.iter().enumerate() {
        solution[c] = rows[i][unknowns].clone();
    }
    (Some(solution), rank)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StationaryDistribution {
    weights: Vec<Rational>,
}

impl StationaryDistribution {
    pub fn weight(&self, v: usize) -> &Rational {
        &self.weights[v]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Whether `nu P = nu` holds exactly for `m`.
    pub fn is_stationary_for(&self, m: &MarkovSystem) -> bool {
        (0..m.len()).all(|v| {
            let flow: Rational = (0..m.len())
                .map(|w| &self.weights[w] * m.entry(w, v))
                .sum();
            flow == self.weights[v]
        })
    }
}

/// A validated directed path in the graph of a chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexPath(Vec<usize>);

impl VertexPath {
    pub fn new(m: &MarkovSystem, vertices: Vec<usize>) -> Result<Self, ChainError> {
        m.check_path(&vertices)?;
        Ok(Self(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weight(&self, m: &MarkovSystem) -> Rational {
        m.sequence_weight(&self.0)
    }

    pub fn label(&self, m: &MarkovSystem) -> ReducedWord {
        m.path_label(&self.0)
    }
}

/// Uniform spherical averages in rank `r`: vertices `a_1..a_r, a_1^-1..a_r^-1`,
/// `P[x][y] = 1/(2r-1)` unless `x = y^-1`.
pub fn builtin_uniform(r: usize) -> Result<MarkovSystem, ChainError> {
    if r < 2 {
        return Err(ChainError::RankTooSmall(r));
    }
    if r > 26 {
        return Err(ChainError::Malformed("rank above 26 has no letter names".into()));
    }
    let alphabet = Alphabet::standard(r);
    let letters: Vec<i32> = (1..=r as i32).chain((1..=r as i32).map(|i| -i)).collect();
    let labels: Vec<ReducedWord> = letters
        .iter()
        .map(|&l| ReducedWord::reduce([l], r))
        .collect::<Result<_, _>>()?;
    let vertices = labels.iter().map(|l| alphabet.format(l)).collect();
    let p = ratio(1, 2 * r as i64 - 1);
    let matrix = letters
        .iter()
        .map(|&x| {
            letters
                .iter()
                .map(|&y| if x == -y { Rational::zero() } else { p.clone() })
                .collect()
        })
        .collect();
    ChainParts {
        alphabet,
        vertices,
        labels,
        matrix,
    }
    .build()
}

/// Octagon side order `a, b, a^-1, b^-1, c, d, c^-1, d^-1` as signed indices.
const OCTAGON: [i32; 8] = [1, 2, -1, -2, 3, 4, -3, -4];

/// The eight special intervals `I_s` of the genus-two Bowen-Series coding.
///
/// Graph edge `(I_s, I_t)` iff `t != s^-1` and `t` is not a cyclic neighbour of
/// `s^-1` in octagon order. Each matrix row is uniform over the vertices with
/// an edge into it. Vertices are listed in octagon order.
pub fn builtin_surface_special() -> MarkovSystem {
    let alphabet = Alphabet::standard(4);
    let pos = |l: i32| OCTAGON.iter().position(|&x| x == l).expect("octagon letter");
    let edge = |s: i32, t: i32| {
        let inv = pos(-s);
        let tp = pos(t);
        tp != inv && tp != (inv + 1) % 8 && tp != (inv + 7) % 8
    };
    let labels: Vec<ReducedWord> = OCTAGON
        .iter()
        .map(|&l| ReducedWord::reduce([l], 4).expect("rank 4 letter"))
        .collect();
    let vertices = labels
        .iter()
        .map(|l| format!("I_{}", alphabet.format(l)))
        .collect();
    let matrix = OCTAGON
        .iter()
        .map(|&row| {
            // Row `row` is positive at every `s` with an edge (s, row).
            let into: Vec<bool> = OCTAGON.iter().map(|&s| edge(s, row)).collect();
            let p = ratio(1, into.iter().filter(|&&b| b).count() as i64);
            into.iter()
                .map(|&b| if b { p.clone() } else { Rational::zero() })
                .collect()
        })
        .collect();
    ChainParts {
        alphabet,
        vertices,
        labels,
        matrix,
    }
    .build()
    .expect("surface chain is stochastic")
}
