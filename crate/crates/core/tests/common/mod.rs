#![allow(dead_code)]

use deckbench_core::Graph;
use proptest::prelude::*;

/// Graph on `lo..=hi` vertices with each edge present independently.
pub fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| from_bits(n, &bits))
    })
}

/// Graph together with a relabelling of its vertices.
pub fn graph_and_perm(lo: usize, hi: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(lo, hi).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Upper-triangle bits in graph6 column order.
pub fn from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                g.add_edge(i, j).unwrap();
            }
            k += 1;
        }
    }
    g
}

/// A forest: each vertex after the first picks an earlier parent or none.
pub fn forest(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<(bool, usize)>(), n.saturating_sub(1)).prop_map(move |choices| {
            let mut g = Graph::empty(n).unwrap();
            for (i, (keep, p)) in choices.into_iter().enumerate() {
                let v = i + 1;
                if keep {
                    g.add_edge(v, p % v).unwrap();
                }
            }
            g
        })
    })
}
