//! Admissibility of a labeled Markov system.
//!
//! A chain is admissible of order `k` when its graph is strongly connected,
//! contains a good subgraph of order `k`, and some vertex `v` has
//! `Gamma_v` (the subgroup generated by labels of closed walks at `v`) equal to
//! the whole free group.
//!
//! A good subgraph of order `k` is a tuple `(u, w, p, q, p*, q*)` of two
//! vertices and four paths with `k` vertices each such that `upw`, `uqw`,
//! `pq*p` and `qp*q` are directed paths and `L(p*) = L(p)^-1`,
//! `L(q*) = L(q)^-1`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::chain::MarkovSystem;
use crate::digraph;
use crate::freegroup::{fold, ReducedWord};

/// Witness of a good subgraph. Paths hold vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GoodSubgraphCertificate {
    pub k: usize,
    pub u: usize,
    pub w: usize,
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    pub p_star: Vec<usize>,
    pub q_star: Vec<usize>,
}

/// Which of the two swap blocks starts at an occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    /// `u p w`
    P,
    /// `u q w`
    Q,
}

impl GoodSubgraphCertificate {
    /// `u p w` (for [`Block::P`]) or `u q w`, each of length `k + 2`.
    pub fn block(&self, which: Block) -> Vec<usize> {
        let middle = match which {
            Block::P => &self.p,
            Block::Q => &self.q,
        };
        let mut out = Vec::with_capacity(self.k + 2);
        out.push(self.u);
        out.extend_from_slice(middle);
        out.push(self.w);
        out
    }

    /// Whether an occurrence of a block can start strictly inside the swapped
    /// middle window of another occurrence. When this is false, swapping `p`
    /// and `q` at one occurrence never creates or destroys an earlier
    /// occurrence, which is what makes the swap map an involution.
    pub fn has_overlapping_blocks(&self) -> bool {
        let blocks = [self.block(Block::P), self.block(Block::Q)];
        let len = self.k + 2;
        (1..=self.k).any(|d| {
            blocks
                .iter()
                .any(|b1| blocks.iter().any(|b2| b1[d..] == b2[..len - d]))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateViolation {
    ZeroOrder,
    WrongLength { path: &'static str, len: usize },
    UnknownVertex { path: &'static str, index: usize },
    NotAPath {
        pattern: &'static str,
        position: usize,
        from: String,
        to: String,
    },
    LabelNotInverse { path: &'static str },
}

impl fmt::Display for CertificateViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ZeroOrder => write!(f, "order k must be at least 1"),
            Self::WrongLength { path, len } => write!(f, "path {path} has length {len}, not k"),
            Self::UnknownVertex { path, index } => {
                write!(f, "path {path} uses unknown vertex index {index}")
            }
            Self::NotAPath {
                pattern,
                position,
                from,
                to,
            } => write!(
                f,
                "{pattern} is not a directed path: missing edge ({from}, {to}) at step {position}"
            ),
            Self::LabelNotInverse { path } => write!(f, "label of {path} is not the inverse"),
        }
    }
}

/// Re-checks every defining condition of a good subgraph.
pub fn validate_certificate(
    m: &MarkovSystem,
    cert: &GoodSubgraphCertificate,
) -> Vec<CertificateViolation> {
    let mut out = Vec::new();
    if cert.k == 0 {
        out.push(CertificateViolation::ZeroOrder);
    }
    let named: [(&'static str, &[usize]); 6] = [
        ("u", std::slice::from_ref(&cert.u)),
        ("w", std::slice::from_ref(&cert.w)),
        ("p", &cert.p),
        ("q", &cert.q),
        ("p*", &cert.p_star),
        ("q*", &cert.q_star),
    ];
    for (name, path) in named {
        if let Some(&index) = path.iter().find(|&&v| v >= m.len()) {
            out.push(CertificateViolation::UnknownVertex { path: name, index });
        }
        if name.starts_with(['p', 'q']) && path.len() != cert.k {
            out.push(CertificateViolation::WrongLength {
                path: name,
                len: path.len(),
            });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let concat = |parts: &[&[usize]]| parts.concat();
    let u = [cert.u];
    let w = [cert.w];
    let patterns: [(&'static str, Vec<usize>); 4] = [
        ("upw", concat(&[&u, &cert.p, &w])),
        ("uqw", concat(&[&u, &cert.q, &w])),
        ("pq*p", concat(&[&cert.p, &cert.q_star, &cert.p])),
        ("qp*q", concat(&[&cert.q, &cert.p_star, &cert.q])),
    ];
    for (pattern, seq) in patterns {
        for (i, pair) in seq.windows(2).enumerate() {
            if !m.has_edge(pair[0], pair[1]) {
                out.push(CertificateViolation::NotAPath {
                    pattern,
                    position: i + 1,
                    from: m.vertex_name(pair[0]).into(),
                    to: m.vertex_name(pair[1]).into(),
                });
            }
        }
    }
    if m.path_label(&cert.p_star) != m.path_label(&cert.p).invert() {
        out.push(CertificateViolation::LabelNotInverse { path: "p*" });
    }
    if m.path_label(&cert.q_star) != m.path_label(&cert.q).invert() {
        out.push(CertificateViolation::LabelNotInverse { path: "q*" });
    }
    out
}

pub fn is_strongly_connected(m: &MarkovSystem) -> bool {
    m.strongly_connected_components().len() == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("vertex {0} lies on no closed directed walk")]
    NoClosedWalk(String),
}

/// A finite generating set of `Gamma_v`.
///
/// Fix breadth-first trees of shortest walks `In(x)` from `v` to `x` and
/// `Out(y)` from `y` back to `v`. Every edge `(x, y)` inside the strongly
/// connected component of `v` contributes the closed walk `In(x) Out(y)`,
/// labeled by all its vertices except the final return to `v`. Because the
/// trees are prefix-closed, the label of any closed walk at `v` telescopes into
/// a product of these generators and their inverses.
pub fn gamma_generators(m: &MarkovSystem, v: usize) -> Result<Vec<ReducedWord>, GammaError> {
    let forward = m.adjacency();
    let backward = digraph::reverse(forward);
    let (from_v, in_parent) = digraph::bfs_parents(forward, v);
    let (to_v, out_next) = digraph::bfs_parents(&backward, v);

    let in_walk = |x: usize| {
        let mut walk = vec![x];
        let mut cur = x;
        while let Some(p) = in_parent[cur] {
            walk.push(p);
            cur = p;
        }
        walk.reverse();
        walk
    };
    // Out(y) without its final `v`.
    let out_walk = |y: usize| {
        let mut walk = Vec::new();
        let mut cur = y;
        while cur != v {
            walk.push(cur);
            cur = out_next[cur].expect("vertex reaches v");
        }
        walk
    };

    let mut generators: Vec<ReducedWord> = Vec::new();
    let mut closed = false;
    for x in (0..m.len()).filter(|&x| from_v[x]) {
        for &y in m.successors(x) {
            if !to_v[y] {
                continue;
            }
            closed = true;
            let mut walk = in_walk(x);
            walk.extend(out_walk(y));
            let label = m.path_label(&walk);
            if !label.is_identity() && !generators.contains(&label) {
                generators.push(label);
            }
        }
    }
    if !closed {
        return Err(GammaError::NoClosedWalk(m.vertex_name(v).into()));
    }
    Ok(generators)
}

pub fn gamma_is_full(m: &MarkovSystem, v: usize) -> Result<bool, GammaError> {
    let gens = gamma_generators(m, v)?;
    Ok(fold(&gens, m.rank())
        .expect("labels share the chain rank")
        .is_full())
}

/// All directed paths with `k` vertices, in lexicographic order.
fn directed_paths(m: &MarkovSystem, k: usize) -> Vec<Vec<usize>> {
    let mut layer: Vec<Vec<usize>> = (0..m.len()).map(|v| vec![v]).collect();
    for _ in 1..k {
        layer = layer
            .into_iter()
            .flat_map(|path| {
                let last = *path.last().expect("nonempty");
                m.successors(last).iter().map(move |&next| {
                    let mut p = path.clone();
                    p.push(next);
                    p
                })
            })
            .collect();
    }
    layer
}

/// Exhaustive search for a good subgraph of order `k`.
///
/// Scan order, first match wins:
/// 1. tier: `p != q` with non-overlapping blocks, then `p != q` with
///    overlapping blocks, then `p = q`;
/// 2. `u`, then `w`, in vertex order;
/// 3. `p`, then `q`, lexicographically by vertex index;
/// 4. `p*`, `q*`: the lexicographically first admissible path.
pub fn find_good_subgraph(m: &MarkovSystem, k: usize) -> Option<GoodSubgraphCertificate> {
    if k == 0 {
        return None;
    }
    let paths = directed_paths(m, k);
    let labels: Vec<ReducedWord> = paths.iter().map(|p| m.path_label(p)).collect();
    let mut by_label: HashMap<&ReducedWord, Vec<usize>> = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        by_label.entry(l).or_default().push(i);
    }
    let inverses: Vec<ReducedWord> = labels.iter().map(|l| l.invert()).collect();

    // inner[(x, y)]: first path z with L(z) = L(y)^-1 such that x z x is a path.
    let mut inner: HashMap<(usize, usize), Option<usize>> = HashMap::new();
    let mut fits = |x: usize, y: usize| -> Option<usize> {
        *inner.entry((x, y)).or_insert_with(|| {
            let px = &paths[x];
            let (first, last) = (px[0], px[k - 1]);
            by_label.get(&inverses[y]).and_then(|candidates| {
                candidates.iter().copied().find(|&z| {
                    m.has_edge(last, paths[z][0]) && m.has_edge(paths[z][k - 1], first)
                })
            })
        })
    };

    for tier in 0..3 {
        for u in 0..m.len() {
            for w in 0..m.len() {
                let between: Vec<usize> = (0..paths.len())
                    .filter(|&i| m.has_edge(u, paths[i][0]) && m.has_edge(paths[i][k - 1], w))
                    .collect();
                for &pi in &between {
                    for &qi in &between {
                        let candidate = GoodSubgraphCertificate {
                            k,
                            u,
                            w,
                            p: paths[pi].clone(),
                            q: paths[qi].clone(),
                            p_star: Vec::new(),
                            q_star: Vec::new(),
                        };
                        let in_tier = match tier {
                            0 => pi != qi && !candidate.has_overlapping_blocks(),
                            1 => pi != qi && candidate.has_overlapping_blocks(),
                            _ => pi == qi,
                        };
                        if !in_tier {
                            continue;
                        }
                        let Some(qs) = fits(pi, qi) else { continue };
                        let Some(ps) = fits(qi, pi) else { continue };
                        return Some(GoodSubgraphCertificate {
                            p_star: paths[ps].clone(),
                            q_star: paths[qs].clone(),
                            ..candidate
                        });
                    }
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub strongly_connected: bool,
    pub certificate: Option<GoodSubgraphCertificate>,
    pub order: Option<usize>,
    /// First vertex with `Gamma_v` full, with its generating set.
    pub full_gamma_vertex: Option<(usize, Vec<ReducedWord>)>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.strongly_connected && self.certificate.is_some() && self.full_gamma_vertex.is_some()
    }
}

pub fn check_admissible(m: &MarkovSystem, k_max: usize) -> AdmissibilityReport {
    let strongly_connected = is_strongly_connected(m);
    let found = (1..=k_max).find_map(|k| find_good_subgraph(m, k).map(|c| (k, c)));
    let full_gamma_vertex = (0..m.len()).find_map(|v| {
        let gens = gamma_generators(m, v).ok()?;
        let full = fold(&gens, m.rank()).ok()?.is_full();
        full.then_some((v, gens))
    });
    AdmissibilityReport {
        strongly_connected,
        order: found.as_ref().map(|(k, _)| *k),
        certificate: found.map(|(_, c)| c),
        full_gamma_vertex,
    }
}

/// Why the constructive sufficient condition does not apply.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PremiseFailure {
    #[error("injectivity: vertices {0} and {1} share a label")]
    Injectivity(String, String),
    #[error("symmetry: edge ({from}, {to}) has no mirrored edge (to^-1, from^-1)")]
    Symmetry { from: String, to: String },
    #[error("pattern: no v, w, u with (v, w), (u, w), (u, v^-1) all edges")]
    Pattern,
    #[error("primitivity: no common walk length joins every ordered pair of vertices")]
    Primitivity,
}

/// Builds a good subgraph from the edge pattern `(v, w), (u, w), (u, v^-1)`
/// on a chain whose labels embed `V` in the free group with an
/// inverse-symmetric edge set.
///
/// With `k` such that every ordered pair is joined by a path of `k` vertices,
/// `p` runs from `w` to `v`, `q` from `v^-1` to `u`, and `p*`, `q*` are their
/// letterwise inverses read backwards.
pub fn sufficient_condition(m: &MarkovSystem) -> Result<GoodSubgraphCertificate, PremiseFailure> {
    let n = m.len();
    for a in 0..n {
        for b in 0..a {
            if m.label(a) == m.label(b) {
                return Err(PremiseFailure::Injectivity(
                    m.vertex_name(b).into(),
                    m.vertex_name(a).into(),
                ));
            }
        }
    }
    let inverse: Vec<Option<usize>> = (0..n)
        .map(|a| {
            let target = m.label(a).invert();
            (0..n).find(|&b| *m.label(b) == target)
        })
        .collect();
    for (a, b) in m.edge_set() {
        let mirrored = match (inverse[b], inverse[a]) {
            (Some(bi), Some(ai)) => m.has_edge(bi, ai),
            _ => false,
        };
        if !mirrored {
            return Err(PremiseFailure::Symmetry {
                from: m.vertex_name(a).into(),
                to: m.vertex_name(b).into(),
            });
        }
    }
    let pattern = (0..n)
        .flat_map(|v| (0..n).map(move |w| (v, w)))
        .flat_map(|(v, w)| (0..n).map(move |u| (v, w, u)))
        .find(|&(v, w, u)| {
            m.has_edge(v, w)
                && m.has_edge(u, w)
                && inverse[v].is_some_and(|vi| m.has_edge(u, vi))
        });
    let Some((v, w, u)) = pattern else {
        return Err(PremiseFailure::Pattern);
    };
    let exponent = digraph::primitivity_exponent(m.adjacency()).ok_or(PremiseFailure::Primitivity)?;
    let k = exponent + 1;
    let v_inv = inverse[v].expect("checked in pattern");
    let p = first_walk(m, w, v, k).expect("primitive graphs join every pair");
    let q = first_walk(m, v_inv, u, k).expect("primitive graphs join every pair");
    let mirror = |path: &[usize]| -> Vec<usize> {
        path.iter()
            .rev()
            .map(|&x| inverse[x].expect("symmetric labels"))
            .collect()
    };
    let cert = GoodSubgraphCertificate {
        k,
        u,
        w,
        p_star: mirror(&p),
        q_star: mirror(&q),
        p,
        q,
    };
    debug_assert!(validate_certificate(m, &cert).is_empty());
    Ok(cert)
}

/// Lexicographically first path with exactly `len` vertices from `from` to `to`.
fn first_walk(m: &MarkovSystem, from: usize, to: usize, len: usize) -> Option<Vec<usize>> {
    // ok[j][x]: a walk with j edges leads from x to `to`.
    let n = m.len();
    let mut ok = vec![vec![false; n]];
    ok[0][to] = true;
    for j in 1..len {
        let row: Vec<bool> = (0..n)
            .map(|x| m.successors(x).iter().any(|&y| ok[j - 1][y]))
            .collect();
        ok.push(row);
    }
    if !ok[len - 1][from] {
        return None;
    }
    let mut path = vec![from];
    for remaining in (0..len - 1).rev() {
        let cur = *path.last().expect("nonempty");
        let next = m
            .successors(cur)
            .iter()
            .copied()
            .find(|&y| ok[remaining][y])?;
        path.push(next);
    }
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{builtin_surface_special, builtin_uniform, ChainParts};
    use crate::freegroup::Alphabet;
    use crate::rational::{int, ratio};

    fn chain(labels: &[&str], rows: Vec<Vec<(i64, i64)>>, rank: usize) -> MarkovSystem {
        let ab = Alphabet::standard(rank);
        ChainParts {
            alphabet: ab.clone(),
            vertices: (0..labels.len()).map(|i| format!("v{i}")).collect(),
            labels: labels.iter().map(|l| ab.parse(l).unwrap()).collect(),
            matrix: rows
                .into_iter()
                .map(|r| r.into_iter().map(|(n, d)| ratio(n, d)).collect())
                .collect(),
        }
        .build()
        .unwrap()
    }

    fn names(m: &MarkovSystem, path: &[usize]) -> Vec<String> {
        path.iter().map(|&v| m.vertex_name(v).to_string()).collect()
    }

    #[test]
    fn strong_connectivity() {
        assert!(is_strongly_connected(&builtin_uniform(2).unwrap()));
        assert!(is_strongly_connected(&builtin_surface_special()));
        // Only edge 0 -> 1 between the two (P[1][0] > 0); both rows stay stochastic.
        let one_way = chain(&["a", "b"], vec![vec![(1, 1), (0, 1)], vec![(1, 2), (1, 2)]], 2);
        assert!(!is_strongly_connected(&one_way));
        assert!(!check_admissible(&one_way, 2).is_admissible());
    }

    #[test]
    fn gamma_uniform() {
        let m = builtin_uniform(2).unwrap();
        let ab = m.alphabet().clone();
        let gens = gamma_generators(&m, 0).unwrap();
        for expected in ["a", "ab", "ab'"] {
            assert!(gens.contains(&ab.parse(expected).unwrap()), "{expected} missing");
        }
        assert!(gamma_is_full(&m, 0).unwrap());
    }

    #[test]
    fn gamma_single_loop() {
        let m = chain(&["a"], vec![vec![(1, 1)]], 2);
        let gens = gamma_generators(&m, 0).unwrap();
        assert_eq!(gens, vec![m.alphabet().parse("a").unwrap()]);
        assert!(!gamma_is_full(&m, 0).unwrap());
    }

    #[test]
    fn gamma_requires_closed_walk() {
        // Only v1 -> v0 and a loop at v1: v0 is on no cycle.
        let m = chain(&["a", "b"], vec![vec![(0, 1), (1, 1)], vec![(0, 1), (1, 1)]], 2);
        assert!(matches!(gamma_generators(&m, 0), Err(GammaError::NoClosedWalk(_))));
        assert!(gamma_generators(&m, 1).is_ok());
    }

    #[test]
    fn gamma_surface() {
        let m = builtin_surface_special();
        let ia = m.vertex_index("I_a").unwrap();
        let gens = gamma_generators(&m, ia).unwrap();
        for expected in ["a", "ac", "adc", "adb"] {
            assert!(gens.contains(&m.alphabet().parse(expected).unwrap()), "{expected} missing");
        }
        assert!(gamma_is_full(&m, ia).unwrap());
        let four = ["a", "ac", "adc", "adb"].map(|s| m.alphabet().parse(s).unwrap());
        assert!(fold(&four, 4).unwrap().is_full());
    }

    #[test]
    fn uniform_order_one_certificate() {
        let m = builtin_uniform(2).unwrap();
        let cert = find_good_subgraph(&m, 1).unwrap();
        assert!(validate_certificate(&m, &cert).is_empty());
        assert_eq!(m.vertex_name(cert.u), "a");
        assert_eq!(m.vertex_name(cert.w), "a");
        assert_eq!(names(&m, &cert.p), ["b"]);
        assert_eq!(names(&m, &cert.q), ["b'"]);
        assert_eq!(names(&m, &cert.p_star), ["b'"]);
        assert_eq!(names(&m, &cert.q_star), ["b"]);
        assert!(!cert.has_overlapping_blocks());
        // Deterministic.
        assert_eq!(find_good_subgraph(&m, 1), Some(cert));
    }

    #[test]
    fn paper_surface_certificate_validates() {
        let m = builtin_surface_special();
        let v = |s: &str| m.vertex_index(s).unwrap();
        let cert = GoodSubgraphCertificate {
            k: 1,
            u: v("I_a"),
            w: v("I_a"),
            p: vec![v("I_a")],
            q: vec![v("I_c")],
            p_star: vec![v("I_a'")],
            q_star: vec![v("I_c'")],
        };
        assert!(validate_certificate(&m, &cert).is_empty());
        assert!(cert.has_overlapping_blocks());

        let found = find_good_subgraph(&m, 1).unwrap();
        assert!(validate_certificate(&m, &found).is_empty());
        assert_eq!((found.u, found.w), (v("I_a"), v("I_a")));
    }

    #[test]
    fn positive_powers_have_no_certificate() {
        let m = chain(
            &["a", "aa"],
            vec![vec![(1, 2), (1, 2)], vec![(1, 3), (2, 3)]],
            2,
        );
        for k in 1..=3 {
            assert_eq!(find_good_subgraph(&m, k), None);
        }
        let report = check_admissible(&m, 3);
        assert!(report.strongly_connected);
        assert!(!report.is_admissible());
    }

    #[test]
    fn tampering_is_reported() {
        let m = builtin_uniform(2).unwrap();
        let cert = find_good_subgraph(&m, 1).unwrap();

        let mut bad_label = cert.clone();
        bad_label.p_star = vec![m.vertex_index("a").unwrap()];
        let diags = validate_certificate(&m, &bad_label);
        assert!(diags.contains(&CertificateViolation::LabelNotInverse { path: "p*" }));

        let mut bad_edge = cert.clone();
        bad_edge.u = m.vertex_index("b'").unwrap();
        let diags = validate_certificate(&m, &bad_edge);
        assert!(diags
            .iter()
            .any(|d| matches!(d, CertificateViolation::NotAPath { pattern: "upw", .. })));

        let mut short = cert;
        short.q.clear();
        assert!(validate_certificate(&m, &short)
            .contains(&CertificateViolation::WrongLength { path: "q", len: 0 }));
    }

    #[test]
    fn admissible_builtins() {
        let u = check_admissible(&builtin_uniform(2).unwrap(), 2);
        assert!(u.is_admissible());
        assert_eq!(u.order, Some(1));
        let s = check_admissible(&builtin_surface_special(), 1);
        assert!(s.is_admissible());
        assert_eq!(s.order, Some(1));
    }

    #[test]
    fn sufficient_condition_uniform() {
        let m = builtin_uniform(2).unwrap();
        let cert = sufficient_condition(&m).unwrap();
        assert!(validate_certificate(&m, &cert).is_empty());
        // Every pair is joined by a walk of two edges, hence paths of three vertices.
        assert_eq!(cert.k, 3);
    }

    #[test]
    fn sufficient_condition_premises() {
        // (v0, v1) edge but no mirrored edge: labels a, b with a 2-cycle and a loop.
        let asym = chain(&["a", "b"], vec![vec![(1, 2), (1, 2)], vec![(1, 1), (0, 1)]], 2);
        assert!(matches!(
            sufficient_condition(&asym),
            Err(PremiseFailure::Symmetry { .. })
        ));

        let same = chain(&["a", "a"], vec![vec![(1, 2), (1, 2)], vec![(1, 2), (1, 2)]], 2);
        assert!(matches!(
            sufficient_condition(&same),
            Err(PremiseFailure::Injectivity(..))
        ));

        // a <-> a^-1 bipartite cycle in rank 1: symmetric, pattern present, period two.
        let ab = Alphabet::standard(1);
        let bip = ChainParts {
            alphabet: ab.clone(),
            vertices: vec!["a".into(), "a'".into()],
            labels: vec![ab.parse("a").unwrap(), ab.parse("a'").unwrap()],
            matrix: vec![vec![int(0), int(1)], vec![int(1), int(0)]],
        }
        .build()
        .unwrap();
        assert!(is_strongly_connected(&bip));
        assert_eq!(sufficient_condition(&bip), Err(PremiseFailure::Primitivity));
    }

    #[test]
    fn sufficient_condition_pattern_missing() {
        // Labels a and a^-1, loops only: symmetric but (u, v^-1) never an edge with (u, w).
        let ab = Alphabet::standard(1);
        let loops = ChainParts {
            alphabet: ab.clone(),
            vertices: vec!["a".into(), "a'".into()],
            labels: vec![ab.parse("a").unwrap(), ab.parse("a'").unwrap()],
            matrix: vec![vec![int(1), int(0)], vec![int(0), int(1)]],
        }
        .build()
        .unwrap();
        assert_eq!(sufficient_condition(&loops), Err(PremiseFailure::Pattern));
    }
}
