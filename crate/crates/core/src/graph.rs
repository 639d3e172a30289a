//! Simple undirected graphs on vertices `0..n`, stored as bit-packed adjacency rows.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest order any [`Graph`] may have.
pub const MAX_ORDER: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    OrderTooLarge { order: usize, max: usize },
    VertexOutOfRange { vertex: usize, order: usize },
    SelfLoop { vertex: usize },
    OrderMismatch { left: usize, right: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::OrderTooLarge { order, max } => {
                write!(f, "order {order} exceeds the supported maximum {max}")
            }
            GraphError::VertexOutOfRange { vertex, order } => {
                write!(f, "vertex {vertex} out of range for a graph of order {order}")
            }
            GraphError::SelfLoop { vertex } => write!(f, "self-loop ({vertex},{vertex}) rejected"),
            GraphError::OrderMismatch { left, right } => {
                write!(f, "graphs have different orders ({left} and {right})")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// A simple undirected graph. Row `v` holds the neighbourhood of `v` as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge { order: n, max: MAX_ORDER });
        }
        let words = n.div_ceil(64);
        Ok(Graph { n, words, bits: vec![0; n * words] })
    }

    /// Builds a graph from an edge list. Repeated pairs are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_pair(u, v)?;
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// The path on `k` vertices (`P_k`).
    pub fn path(k: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(k)?;
        for v in 1..k {
            g.set_edge(v - 1, v);
        }
        Ok(g)
    }

    /// The cycle on `k` vertices. Orders below 3 give the path instead.
    pub fn cycle(k: usize) -> Result<Self, GraphError> {
        let mut g = Graph::path(k)?;
        if k >= 3 {
            g.set_edge(k - 1, 0);
        }
        Ok(g)
    }

    pub fn complete(k: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(k)?;
        for v in 0..k {
            for u in 0..v {
                g.set_edge(u, v);
            }
        }
        Ok(g)
    }

    /// The star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(leaves + 1)?;
        for v in 1..=leaves {
            g.set_edge(0, v);
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = self.bits.iter().map(|w| w.count_ones() as usize).sum();
        total / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adds the edge `uv`. Both endpoints must be distinct and in range.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_pair(u, v)?;
        self.set_edge(u, v);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.bits[u * self.words + v / 64] &= !(1 << (v % 64));
            self.bits[v * self.words + u / 64] &= !(1 << (u % 64));
        }
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, order: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        Ok(())
    }

    /// The adjacency row of `v` as raw bitset words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> Neighbors<'_> {
        Neighbors { row: self.row(v), word: 0, current: self.row(v).first().copied().unwrap_or(0) }
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| self.neighbors(v).collect()).collect()
    }

    /// `G - v`: removes `v` and relabels the remaining vertices contiguously,
    /// preserving their relative order.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, order: self.n });
        }
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        Ok(self.induced(&keep))
    }

    /// The subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len()).expect("induced subgraph is no larger than its parent");
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &w) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, w) {
                    g.set_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal the order");
        let mut g = Graph { n: self.n, words: self.words, bits: vec![0; self.bits.len()] };
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        g
    }

    /// The graph with a new vertex `n` joined to every vertex whose bit is set in `mask`.
    pub fn extended(&self, mask: u64) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(self.n + 1)?;
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for u in (0..self.n.min(64)).filter(|&u| mask >> u & 1 == 1) {
            g.set_edge(u, self.n);
        }
        Ok(g)
    }

    /// `self ∪ other`, with `other`'s vertices shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.set_edge(self.n + u, self.n + v);
        }
        Ok(g)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Breadth-first distances from `s`; `usize::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = alloc::collections::VecDeque::new();
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, E=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

pub struct Neighbors<'a> {
    row: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Neighbors<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
            if self.word >= self.row.len() {
                return None;
            }
            self.current = self.row[self.word];
        }
    }
}
