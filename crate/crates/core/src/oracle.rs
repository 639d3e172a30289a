//! Slow reference implementations for cross-checking at small orders.
//!
//! Only compiled for tests or with the `oracle` feature.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

/// Largest order the permutation oracle accepts.
pub const PERMUTATION_ORACLE_CAP: usize = 9;

/// The order of `g` with the lexicographically largest upper-triangle bit
/// string (graph6 column order) over all relabellings. Equal certificates
/// mean isomorphic graphs.
///
/// Explores all permutations position by position and abandons a prefix as
/// soon as its bits fall below the best complete string found so far.
pub fn permutation_certificate(g: &Graph) -> (usize, Vec<bool>) {
    let n = g.order();
    assert!(n <= PERMUTATION_ORACLE_CAP, "permutation oracle limited to order {PERMUTATION_ORACLE_CAP}");
    let mut best: Option<Vec<bool>> = None;
    let mut placed = Vec::with_capacity(n);
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    let mut used = vec![false; n];
    extend(g, &mut placed, &mut used, &mut bits, &mut best);
    (n, best.unwrap_or_default())
}

fn extend(g: &Graph, placed: &mut Vec<usize>, used: &mut [bool], bits: &mut Vec<bool>, best: &mut Option<Vec<bool>>) {
    let n = g.order();
    if placed.len() == n {
        if best.as_ref().is_none_or(|b| *bits > *b) {
            *best = Some(bits.clone());
        }
        return;
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        let mark = bits.len();
        // column for the new position j: rows i < j in placement order
        for &u in placed.iter() {
            bits.push(g.has_edge(u, v));
        }
        let prune = best.as_ref().is_some_and(|b| bits[..] < b[..bits.len()]);
        if !prune {
            used[v] = true;
            placed.push(v);
            extend(g, placed, used, bits, best);
            placed.pop();
            used[v] = false;
        }
        bits.truncate(mark);
    }
}

/// Every labelled graph on `n` vertices (`2^(n(n-1)/2)` of them).
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    assert!(pairs.len() < 32, "too many labelled graphs");
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
        Graph::from_edges(n, &edges).expect("valid edges")
    })
}

/// Every labelled tree on `n ≥ 1` vertices, decoded from Prüfer sequences.
pub fn labeled_trees(n: usize) -> impl Iterator<Item = Graph> {
    let len = n.saturating_sub(2);
    let total = if n < 2 { 1 } else { n.pow(len as u32) };
    (0..total).map(move |mut code| {
        let mut seq = vec![0; len];
        for s in seq.iter_mut() {
            *s = code % n;
            code /= n;
        }
        prufer_tree(n, &seq)
    })
}

fn prufer_tree(n: usize, seq: &[usize]) -> Graph {
    let mut g = Graph::empty(n).expect("small order");
    if n < 2 {
        return g;
    }
    let mut degree = vec![1; n];
    for &s in seq {
        degree[s] += 1;
    }
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        g.add_edge(leaf, s).expect("valid edge");
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.add_edge(rest[0], rest[1]).expect("valid edge");
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    #[test]
    fn counts_isomorphism_classes() {
        for (n, expected) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)] {
            let classes: BTreeSet<_> = labeled_graphs(n).map(|g| permutation_certificate(&g)).collect();
            assert_eq!(classes.len(), expected);
        }
    }

    #[test]
    fn orders_are_distinguished() {
        let k0 = Graph::empty(0).unwrap();
        let k1 = Graph::empty(1).unwrap();
        assert_ne!(permutation_certificate(&k0), permutation_certificate(&k1));
    }

    #[test]
    fn prufer_counts() {
        assert_eq!(labeled_trees(5).count(), 125);
        let classes: BTreeSet<_> = labeled_trees(6).map(|g| permutation_certificate(&g)).collect();
        assert_eq!(classes.len(), 6);
        assert!(labeled_trees(6).all(|t| t.edge_count() == 5 && t.is_connected()));
    }
}
