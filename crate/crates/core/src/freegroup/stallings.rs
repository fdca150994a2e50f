//! Stallings subgroup graphs.
//!
//! A finitely generated subgroup `H = <g_1, ..., g_m>` of a free group is
//! represented by folding the wedge of loops spelling each `g_i` until no
//! vertex has two edges with the same label leaving (or entering) it. In the
//! folded graph a reduced word lies in `H` exactly when it can be read from
//! the basepoint back to the basepoint.

use std::collections::{BTreeMap, VecDeque};

use super::word::{Letter, ReducedWord, WordError};

/// A folded, core, based subgroup graph with vertices numbered canonically.
///
/// Vertex 0 is the basepoint and the numbering is the breadth-first order from
/// the basepoint visiting edge labels in the order `a_1, a_1^-1, a_2, ...`.
/// Two subgroup graphs are isomorphic as based labeled graphs iff they are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupGraph {
    rank: usize,
    /// `adjacency[v][letter] = target`; both orientations of every edge are stored.
    adjacency: Vec<BTreeMap<Letter, usize>>,
}

impl SubgroupGraph {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basepoint(&self) -> usize {
        0
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    /// Positive-label edges `(from, generator index, to)`.
    pub fn edges(&self) -> Vec<(usize, Letter, usize)> {
        let mut out = Vec::new();
        for (v, adj) in self.adjacency.iter().enumerate() {
            for (&l, &t) in adj {
                if l > 0 {
                    out.push((v, l, t));
                }
            }
        }
        out
    }

    pub fn target(&self, v: usize, letter: Letter) -> Option<usize> {
        self.adjacency[v].get(&letter).copied()
    }

    /// Deterministic, codeterministic and connected.
    pub fn is_folded(&self) -> bool {
        // A BTreeMap per vertex already rules out two outgoing edges with the
        // same label; check the stored orientations agree with each other.
        for (v, adj) in self.adjacency.iter().enumerate() {
            for (&l, &t) in adj {
                if self.adjacency[t].get(&-l) != Some(&v) {
                    return false;
                }
            }
        }
        let mut seen = vec![false; self.num_vertices()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &t in self.adjacency[v].values() {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Membership: reads `word` from the basepoint.
    pub fn contains(&self, word: &ReducedWord) -> Result<bool, WordError> {
        if word.rank() != self.rank {
            return Err(WordError::RankMismatch {
                left: self.rank,
                right: word.rank(),
            });
        }
        let mut v = 0;
        for &l in word.letters() {
            match self.target(v, l) {
                Some(t) => v = t,
                None => return Ok(false),
            }
        }
        Ok(v == 0)
    }

    /// Whether the subgroup is the whole free group: every generator is a member.
    pub fn is_full(&self) -> bool {
        (1..=self.rank).all(|i| {
            let g = ReducedWord::generator(self.rank, i).expect("generator in range");
            self.contains(&g).expect("same rank")
        })
    }
}

/// Folds the subgroup generated by `generators` (all of rank `rank`).
pub fn fold(generators: &[ReducedWord], rank: usize) -> Result<SubgroupGraph, WordError> {
    let mut folder = Folder::new();
    for g in generators {
        if g.rank() != rank {
            return Err(WordError::RankMismatch {
                left: rank,
                right: g.rank(),
            });
        }
        folder.add_loop(g.letters());
    }
    Ok(folder.finish(rank))
}

/// Union-find based folding: edges are inserted one at a time and any label
/// clash at a vertex triggers a merge of the two targets.
struct Folder {
    parent: Vec<usize>,
    adjacency: Vec<BTreeMap<Letter, usize>>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    fn new() -> Self {
        Self {
            parent: vec![0],
            adjacency: vec![BTreeMap::new()],
            pending: Vec::new(),
        }
    }

    fn new_vertex(&mut self) -> usize {
        let v = self.parent.len();
        self.parent.push(v);
        self.adjacency.push(BTreeMap::new());
        v
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn add_loop(&mut self, letters: &[Letter]) {
        if letters.is_empty() {
            return;
        }
        let mut current = 0;
        for (i, &l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() {
                0
            } else {
                self.new_vertex()
            };
            self.link(current, l, next);
            self.process();
            current = next;
        }
    }

    fn link(&mut self, from: usize, letter: Letter, to: usize) {
        self.half_link(from, letter, to);
        self.half_link(to, -letter, from);
    }

    fn half_link(&mut self, from: usize, letter: Letter, to: usize) {
        let x = self.find(from);
        let y = self.find(to);
        match self.adjacency[x].get(&letter).copied() {
            Some(z) => {
                let z = self.find(z);
                if z != y {
                    self.pending.push((z, y));
                }
            }
            None => {
                self.adjacency[x].insert(letter, y);
            }
        }
    }

    fn process(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            // Keep the smaller index as root so the basepoint stays 0.
            let (root, other) = if a < b { (a, b) } else { (b, a) };
            self.parent[other] = root;
            let edges = std::mem::take(&mut self.adjacency[other]);
            for (l, t) in edges {
                self.half_link(root, l, t);
                self.half_link(t, -l, root);
            }
        }
    }

    fn finish(mut self, rank: usize) -> SubgroupGraph {
        let n = self.parent.len();
        // Resolve every stored target to its root.
        let mut adjacency: Vec<BTreeMap<Letter, usize>> = vec![BTreeMap::new(); n];
        for (v, resolved) in adjacency.iter_mut().enumerate() {
            if self.find(v) != v {
                continue;
            }
            let entries: Vec<(Letter, usize)> =
                self.adjacency[v].iter().map(|(&l, &t)| (l, t)).collect();
            for (l, t) in entries {
                resolved.insert(l, self.find(t));
            }
        }
        let alive: Vec<bool> = (0..n).map(|v| self.find(v) == v).collect();
        trim_to_core(&mut adjacency, alive);
        canonicalize(rank, &adjacency)
    }
}

/// Repeatedly removes degree-one vertices other than the basepoint.
fn trim_to_core(adjacency: &mut [BTreeMap<Letter, usize>], mut alive: Vec<bool>) {
    let n = adjacency.len();
    let mut stack: Vec<usize> = (1..n)
        .filter(|&v| alive[v] && adjacency[v].len() == 1)
        .collect();
    while let Some(v) = stack.pop() {
        if !alive[v] || adjacency[v].len() != 1 {
            continue;
        }
        let (&l, &t) = adjacency[v].iter().next().expect("degree one");
        adjacency[v].clear();
        alive[v] = false;
        adjacency[t].remove(&-l);
        if t != 0 && adjacency[t].len() == 1 {
            stack.push(t);
        }
    }
}

fn letter_order(rank: usize) -> impl Iterator<Item = Letter> {
    (1..=rank as Letter).flat_map(|i| [i, -i])
}

/// Breadth-first relabeling from the basepoint in generator-index order.
fn canonicalize(rank: usize, adjacency: &[BTreeMap<Letter, usize>]) -> SubgroupGraph {
    let mut new_index = vec![usize::MAX; adjacency.len()];
    let mut order = vec![0usize];
    new_index[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for l in letter_order(rank) {
            if let Some(&t) = adjacency[v].get(&l) {
                if new_index[t] == usize::MAX {
                    new_index[t] = order.len();
                    order.push(t);
                }
            }
        }
    }
    let relabeled = order
        .iter()
        .map(|&v| {
            adjacency[v]
                .iter()
                .map(|(&l, &t)| (l, new_index[t]))
                .collect()
        })
        .collect();
    SubgroupGraph {
        rank,
        adjacency: relabeled,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::Alphabet;

    fn words(spec: &[&str]) -> Vec<ReducedWord> {
        let ab = Alphabet::standard(2);
        spec.iter().map(|s| ab.parse(s).unwrap()).collect()
    }

    #[test]
    fn cyclic_petal() {
        let g = fold(&words(&["a"]), 2).unwrap();
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(g.edges(), vec![(0, 1, 0)]);
        assert!(g.is_folded());
        assert!(!g.is_full());
        assert!(!g.contains(&words(&["b"])[0]).unwrap());
    }

    #[test]
    fn full_group_from_three_generators() {
        // b = a^-1 (ab), so <a, ab, ab^-1> folds to the rose.
        let g = fold(&words(&["a", "ab", "ab'"]), 2).unwrap();
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(g.edges(), vec![(0, 1, 0), (0, 2, 0)]);
        assert!(g.is_full());
        assert!(g.contains(&words(&["b"])[0]).unwrap());
    }

    #[test]
    fn square_and_generator() {
        let g = fold(&words(&["aa", "b"]), 2).unwrap();
        assert!(!g.contains(&words(&["a"])[0]).unwrap());
        assert!(g.contains(&words(&["aab'aa"])[0]).unwrap());
        assert!(!g.contains(&words(&["aba'"])[0]).unwrap());
        assert!(!g.is_full());
        assert_eq!(g.num_vertices(), 2);
    }

    #[test]
    fn empty_and_trivial_generators() {
        let g = fold(&[], 2).unwrap();
        assert_eq!(g.num_vertices(), 1);
        assert!(g.contains(&ReducedWord::identity(2)).unwrap());
        assert_eq!(fold(&words(&["1"]), 2).unwrap(), g);
    }

    #[test]
    fn conjugate_generator_trims_to_core() {
        // <b a b^-1> has a hanging b-edge at the basepoint; the basepoint is never trimmed.
        let g = fold(&words(&["bab'"]), 2).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert!(g.contains(&words(&["ba'b'"])[0]).unwrap());
        assert!(!g.contains(&words(&["a"])[0]).unwrap());
    }

    #[test]
    fn membership_rank_mismatch() {
        let g = fold(&words(&["a"]), 2).unwrap();
        assert!(g.contains(&ReducedWord::identity(3)).is_err());
        assert!(fold(&[ReducedWord::identity(3)], 2).is_err());
    }
}
