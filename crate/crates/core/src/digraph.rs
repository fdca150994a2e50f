//! Small directed-graph routines on adjacency lists indexed `0..n`.

use std::collections::VecDeque;

/// Tarjan's strongly connected components, each sorted, listed in
/// increasing order of their smallest vertex.
pub fn strongly_connected_components(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adjacency.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut counter = 0;

    // Iterative DFS: (vertex, next neighbour position).
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut frames = vec![(root, 0usize)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&(v, pos)) = frames.last() {
            if pos < adjacency[v].len() {
                let w = adjacency[v][pos];
                if let Some(top) = frames.last_mut() {
                    top.1 += 1;
                }
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
        }
    }
    components.sort_by_key(|c| c[0]);
    components
}

/// Breadth-first tree from `source`: `parent[v]` is the predecessor on a
/// shortest path, `None` for the source and unreachable vertices. Neighbours
/// are visited in the order they appear in the adjacency lists.
pub fn bfs_parents(adjacency: &[Vec<usize>], source: usize) -> (Vec<bool>, Vec<Option<usize>>) {
    let n = adjacency.len();
    let mut seen = vec![false; n];
    let mut parent = vec![None; n];
    let mut queue = VecDeque::from([source]);
    seen[source] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    (seen, parent)
}

pub fn reverse(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut rev = vec![Vec::new(); adjacency.len()];
    for (v, succ) in adjacency.iter().enumerate() {
        for &w in succ {
            rev[w].push(v);
        }
    }
    for r in &mut rev {
        r.sort_unstable();
    }
    rev
}

/// Smallest `m >= 0` with a walk of exactly `m` edges between every ordered
/// pair, searched up to `n^2` (beyond Wielandt's bound).
pub fn primitivity_exponent(adjacency: &[Vec<usize>]) -> Option<usize> {
    let n = adjacency.len();
    if n == 0 {
        return None;
    }
    // reach[i][j]: walk of exactly m edges from i to j.
    let mut reach: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    for m in 0..=n * n {
        if reach.iter().all(|row| row.iter().all(|&b| b)) {
            return Some(m);
        }
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                if reach[i][j] {
                    for &k in &adjacency[j] {
                        next[i][k] = true;
                    }
                }
            }
        }
        reach = next;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scc_basic() {
        // 0 <-> 1 -> 2, 3 isolated with loop
        let adj = vec![vec![1], vec![0, 2], vec![], vec![3]];
        assert_eq!(
            strongly_connected_components(&adj),
            vec![vec![0, 1], vec![2], vec![3]]
        );
    }

    #[test]
    fn scc_single_cycle() {
        let adj = vec![vec![1], vec![2], vec![0]];
        assert_eq!(strongly_connected_components(&adj), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn bfs_shortest() {
        let adj = vec![vec![1, 2], vec![2], vec![0]];
        let (seen, parent) = bfs_parents(&adj, 0);
        assert!(seen.iter().all(|&s| s));
        assert_eq!(parent, vec![None, Some(0), Some(0)]);
    }

    #[test]
    fn primitivity() {
        assert_eq!(primitivity_exponent(&[vec![0]]), Some(0));
        // two-cycle is periodic
        assert_eq!(primitivity_exponent(&[vec![1], vec![0]]), None);
        // 2-cycle plus a loop
        assert_eq!(primitivity_exponent(&[vec![0, 1], vec![0]]), Some(2));
        // not strongly connected
        assert_eq!(primitivity_exponent(&[vec![0, 1], vec![1]]), None);
    }
}
