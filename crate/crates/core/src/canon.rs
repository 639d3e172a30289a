//! Canonical labelling by partition refinement with individualisation and
//! backtracking.
//!
//! Every leaf of the search tree is a discrete ordered partition; relabelling the
//! graph by it gives a leaf certificate and the smallest certificate wins. Two
//! kinds of pruning keep the tree small, both driven by automorphisms that fall
//! out of leaves with equal certificates:
//!
//! * a leaf equal to the first (or best) leaf abandons the search back to the
//!   node where the two paths diverged, since that sibling subtree is an image of
//!   one already explored;
//! * at every node, children lying in one orbit of the automorphisms found so far
//!   that fix the current path are explored only once.
//!
//! [`canonical_form`] canonicalises each connected component separately and
//! concatenates them in certificate order, so graphs with many isomorphic
//! components (isolated vertices, isolated edges) cost nothing extra.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, GraphError, MAX_ORDER};
use crate::graph6;

/// Isomorphism certificate: the graph6 encoding of the canonically relabelled graph.
///
/// Two forms are equal exactly when the graphs are isomorphic. The derived order
/// sorts by order first, then by the packed adjacency body.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: u16,
    bytes: Vec<u8>,
}

impl CanonicalForm {
    #[inline]
    pub fn order(&self) -> usize {
        self.n as usize
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn as_graph6(&self) -> &str {
        core::str::from_utf8(&self.bytes).expect("graph6 bytes are ASCII")
    }

    /// The canonical representative itself.
    pub fn to_graph(&self) -> Graph {
        graph6::decode_bytes(&self.bytes, 0).expect("certificate is valid graph6")
    }

    /// Edge count, read straight off the packed body.
    pub fn edge_count(&self) -> usize {
        let prefix = if self.n <= 62 { 1 } else { 4 };
        self.bytes[prefix..].iter().map(|b| (b - 63).count_ones() as usize).sum()
    }

    /// Form of `g` under a labelling returned by [`canonical_labeling`].
    pub(crate) fn from_labeling(g: &Graph, perm: &[usize]) -> Self {
        Self::from_canonical_graph(&g.permuted(perm))
    }

    /// Wraps an already-canonical graph. Callers must guarantee canonicity.
    fn from_canonical_graph(g: &Graph) -> Self {
        CanonicalForm { n: g.order() as u16, bytes: graph6::encode_bytes(g) }
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_graph6())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_graph6())
    }
}

/// The isomorphism certificate of `g`.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, GraphError> {
    let perm = canonical_labeling(g)?;
    Ok(CanonicalForm::from_labeling(g, &perm))
}

/// Canonical relabelling: vertex `v` of `g` becomes `perm[v]` in the canonical graph.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>, GraphError> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(GraphError::OrderTooLarge { order: n, max: MAX_ORDER });
    }
    let mut parts: Vec<(usize, Vec<u64>, Vec<usize>)> = Vec::new();
    for comp in g.components() {
        if comp.len() == 1 {
            parts.push((1, Vec::new(), comp));
            continue;
        }
        let sub = g.induced(&comp);
        let result = search(&sub, None);
        let ordered = result.order.iter().map(|&i| comp[i]).collect();
        parts.push((comp.len(), result.certificate, ordered));
    }
    parts.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let mut perm = vec![0; n];
    for (position, v) in parts.iter().flat_map(|p| p.2.iter()).enumerate() {
        perm[*v] = position;
    }
    Ok(perm)
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut dg: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.order()).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    canonical_form(g).ok() == canonical_form(h).ok()
}

/// Generators of a subgroup of `Aut(g)` (every automorphism met during the
/// canonical search). Each generator maps `v` to `gen[v]`.
pub fn automorphism_generators(g: &Graph) -> Vec<Vec<usize>> {
    if g.order() <= 1 {
        return Vec::new();
    }
    search(g, None).generators
}

/// Exact vertex orbits of `Aut(g)`: entry `v` is the smallest vertex in the orbit of `v`.
pub fn automorphism_orbits(g: &Graph) -> Vec<usize> {
    let n = g.order();
    if n == 0 {
        return Vec::new();
    }
    let result = search(g, None);
    let mut uf = UnionFind::new(n);
    for gen in &result.generators {
        for (v, &image) in gen.iter().enumerate() {
            uf.union(v, image);
        }
    }
    // vertices in different cells of the equitable root partition are never
    // in one orbit; within a cell, fall back to vertex-rooted certificates
    let mut rooted: Vec<Option<Vec<u64>>> = vec![None; n];
    for v in 0..n {
        for u in 0..v {
            if uf.find(u) == uf.find(v) || result.root_cell[u] != result.root_cell[v] {
                continue;
            }
            let (ru, rv) = (uf.find(u), uf.find(v));
            if rooted[ru].is_none() {
                rooted[ru] = Some(rooted_certificate(g, ru));
            }
            if rooted[rv].is_none() {
                rooted[rv] = Some(rooted_certificate(g, rv));
            }
            if rooted[ru] == rooted[rv] {
                uf.union(ru, rv);
            }
        }
    }
    let mut smallest = vec![usize::MAX; n];
    for v in 0..n {
        let r = uf.find(v);
        smallest[r] = smallest[r].min(v);
    }
    (0..n).map(|v| smallest[uf.find(v)]).collect()
}

/// True when some automorphism of `g` maps `u` to `v`.
pub fn same_orbit(g: &Graph, u: usize, v: usize) -> bool {
    u == v || rooted_certificate(g, u) == rooted_certificate(g, v)
}

pub fn is_vertex_transitive(g: &Graph) -> bool {
    automorphism_orbits(g).iter().all(|&o| o == 0)
}

/// Certificate of `g` with vertex `v` distinguished.
fn rooted_certificate(g: &Graph, v: usize) -> Vec<u64> {
    let colors: Vec<usize> = (0..g.order()).map(|u| (u != v) as usize).collect();
    search(g, Some(&colors)).certificate
}

pub(crate) struct SearchResult {
    /// Canonical position `i` holds vertex `order[i]`.
    pub order: Vec<usize>,
    pub certificate: Vec<u64>,
    pub generators: Vec<Vec<usize>>,
    /// Cell index of every vertex in the refined root partition.
    pub root_cell: Vec<usize>,
}

/// Full canonical search on `g`, optionally starting from a vertex colouring
/// (cells ordered by colour value).
pub(crate) fn search(g: &Graph, colors: Option<&[usize]>) -> SearchResult {
    let n = g.order();
    let adj: Vec<Vec<u32>> = (0..n).map(|v| g.neighbors(v).map(|w| w as u32).collect()).collect();
    let mut s = Searcher::new(&adj, n);
    let mut root = match colors {
        Some(c) => Partition::colored(c),
        None => Partition::unit(n),
    };
    let starts = root.cell_starts();
    s.refine(&mut root, &starts);
    let mut root_cell = vec![0; n];
    let mut index = 0;
    let mut p = 0;
    while p < n {
        let e = root.end[p] as usize;
        for &v in &root.lab[p..e] {
            root_cell[v as usize] = index;
        }
        index += 1;
        p = e;
    }
    let mut path = Vec::new();
    s.descend(root, &mut path);
    let best = s.best.expect("search reaches at least one leaf");
    SearchResult {
        order: best.lab.iter().map(|&v| v as usize).collect(),
        certificate: best.cert,
        generators: s.generators.into_iter().map(|g| g.into_iter().map(|v| v as usize).collect()).collect(),
        root_cell,
    }
}

#[derive(Clone)]
struct Partition {
    lab: Vec<u32>,
    pos: Vec<u32>,
    /// start position of the cell holding each vertex
    cell: Vec<u32>,
    /// end (exclusive) of the cell starting at each position
    end: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        Partition {
            lab: (0..n as u32).collect(),
            pos: (0..n as u32).collect(),
            cell: vec![0; n],
            end: vec![n as u32; n],
            cells: usize::from(n > 0),
        }
    }

    fn colored(colors: &[usize]) -> Self {
        let n = colors.len();
        let mut lab: Vec<u32> = (0..n as u32).collect();
        lab.sort_by_key(|&v| colors[v as usize]);
        let mut p = Partition { pos: vec![0; n], cell: vec![0; n], end: vec![0; n], cells: 0, lab };
        let mut start = 0;
        while start < n {
            let color = colors[p.lab[start] as usize];
            let mut e = start;
            while e < n && colors[p.lab[e] as usize] == color {
                e += 1;
            }
            for q in start..e {
                let v = p.lab[q] as usize;
                p.pos[v] = q as u32;
                p.cell[v] = start as u32;
            }
            p.end[start] = e as u32;
            p.cells += 1;
            start = e;
        }
        p
    }

    fn cell_starts(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.cells);
        let mut p = 0;
        while p < self.lab.len() {
            out.push(p as u32);
            p = self.end[p] as usize;
        }
        out
    }

    fn first_nontrivial_cell(&self) -> Option<usize> {
        let mut p = 0;
        while p < self.lab.len() {
            let e = self.end[p] as usize;
            if e - p > 1 {
                return Some(p);
            }
            p = e;
        }
        None
    }

    /// Splits `v` off the front of its cell; returns the new singleton's start.
    fn individualize(&mut self, v: usize) -> usize {
        let c = self.cell[v] as usize;
        let e = self.end[c];
        let other = self.lab[c];
        let pv = self.pos[v] as usize;
        self.lab.swap(c, pv);
        self.pos[other as usize] = pv as u32;
        self.pos[v] = c as u32;
        for q in c + 1..e as usize {
            self.cell[self.lab[q] as usize] = c as u32 + 1;
        }
        self.end[c] = c as u32 + 1;
        self.end[c + 1] = e;
        self.cells += 1;
        c
    }
}

struct Leaf {
    lab: Vec<u32>,
    cert: Vec<u64>,
    path: Vec<u32>,
}

enum Flow {
    Continue,
    /// Abandon everything below the node at this depth.
    Jump(usize),
}

struct Searcher<'a> {
    adj: &'a [Vec<u32>],
    n: usize,
    words: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<u32>>,
    count: Vec<u32>,
    queued: Vec<bool>,
    marked: Vec<bool>,
}

impl<'a> Searcher<'a> {
    fn new(adj: &'a [Vec<u32>], n: usize) -> Self {
        Searcher {
            adj,
            n,
            words: n.div_ceil(64),
            first: None,
            best: None,
            generators: Vec::new(),
            count: vec![0; n],
            queued: vec![false; n],
            marked: vec![false; n],
        }
    }

    /// Refines `p` to the coarsest equitable partition finer than it, using the
    /// given cells as the initial splitters.
    fn refine(&mut self, p: &mut Partition, splitters: &[u32]) {
        let mut queue: VecDeque<u32> = VecDeque::with_capacity(splitters.len());
        for &s in splitters {
            queue.push_back(s);
            self.queued[s as usize] = true;
        }
        let mut touched = Vec::new();
        let mut touched_cells = Vec::new();
        while let Some(w) = queue.pop_front() {
            self.queued[w as usize] = false;
            if p.cells == self.n {
                continue;
            }
            let we = p.end[w as usize] as usize;
            for q in w as usize..we {
                let x = p.lab[q] as usize;
                for &y in &self.adj[x] {
                    let y = y as usize;
                    if self.count[y] == 0 {
                        touched.push(y);
                    }
                    self.count[y] += 1;
                }
            }
            for &y in &touched {
                let c = p.cell[y] as usize;
                if p.end[c] as usize - c > 1 && !self.marked[c] {
                    self.marked[c] = true;
                    touched_cells.push(c);
                }
            }
            touched_cells.sort_unstable();
            for &c in &touched_cells {
                self.marked[c] = false;
                self.split(p, c, &mut queue);
            }
            for &y in &touched {
                self.count[y] = 0;
            }
            touched.clear();
            touched_cells.clear();
        }
    }

    fn split(&mut self, p: &mut Partition, c: usize, queue: &mut VecDeque<u32>) {
        let e = p.end[c] as usize;
        let count = &self.count;
        p.lab[c..e].sort_by_key(|&v| count[v as usize]);
        if count[p.lab[c] as usize] == count[p.lab[e - 1] as usize] {
            return;
        }
        let was_queued = self.queued[c];
        let mut groups: Vec<(usize, usize)> = Vec::new();
        let mut s = c;
        while s < e {
            let key = count[p.lab[s] as usize];
            let mut t = s;
            while t < e && count[p.lab[t] as usize] == key {
                t += 1;
            }
            groups.push((s, t));
            s = t;
        }
        for &(s, t) in &groups {
            p.end[s] = t as u32;
            for q in s..t {
                let v = p.lab[q] as usize;
                p.cell[v] = s as u32;
                p.pos[v] = q as u32;
            }
        }
        p.cells += groups.len() - 1;
        // Hopcroft: when the parent was not pending, one largest part may be skipped
        let skip = if was_queued {
            Some(c)
        } else {
            let mut largest = groups[0];
            for &g in &groups[1..] {
                if g.1 - g.0 > largest.1 - largest.0 {
                    largest = g;
                }
            }
            Some(largest.0)
        };
        for &(s, _) in &groups {
            if Some(s) != skip && !self.queued[s] {
                self.queued[s] = true;
                queue.push_back(s as u32);
            }
        }
    }

    fn certificate(&self, p: &Partition) -> Vec<u64> {
        let mut rows = vec![0u64; self.n * self.words];
        for i in 0..self.n {
            let v = p.lab[i] as usize;
            let row = &mut rows[i * self.words..(i + 1) * self.words];
            for &w in &self.adj[v] {
                let j = p.pos[w as usize] as usize;
                row[j / 64] |= 1 << (j % 64);
            }
        }
        rows
    }

    fn descend(&mut self, p: Partition, path: &mut Vec<u32>) -> Flow {
        let Some(target) = p.first_nontrivial_cell() else {
            return self.leaf(&p, path);
        };
        let level = path.len();
        let candidates: Vec<u32> = p.lab[target..p.end[target] as usize].to_vec();
        let mut tried: Vec<u32> = Vec::new();
        let mut orbits: Option<(usize, UnionFind)> = None;
        for v in candidates {
            if !tried.is_empty() {
                if orbits.as_ref().is_none_or(|(seen, _)| *seen != self.generators.len()) {
                    orbits = Some((self.generators.len(), self.stabilizer_orbits(path)));
                }
                let uf = &mut orbits.as_mut().expect("just computed").1;
                let root = uf.find(v as usize);
                if tried.iter().any(|&t| uf.find(t as usize) == root) {
                    continue;
                }
            }
            let mut child = p.clone();
            let cell = child.individualize(v as usize);
            self.refine(&mut child, &[cell as u32]);
            path.push(v);
            let flow = self.descend(child, path);
            path.pop();
            tried.push(v);
            if let Flow::Jump(to) = flow {
                if to < level {
                    return flow;
                }
            }
        }
        Flow::Continue
    }

    fn leaf(&mut self, p: &Partition, path: &[u32]) -> Flow {
        let cert = self.certificate(p);
        let Some(first) = &self.first else {
            let leaf = Leaf { lab: p.lab.clone(), cert, path: path.to_vec() };
            self.best = Some(Leaf { lab: leaf.lab.clone(), cert: leaf.cert.clone(), path: leaf.path.clone() });
            self.first = Some(leaf);
            return Flow::Continue;
        };
        if cert == first.cert {
            let gen = mapping(&first.lab, &p.lab);
            let to = common_prefix(&first.path, path);
            self.generators.push(gen);
            return Flow::Jump(to);
        }
        let best = self.best.as_ref().expect("best is set with first");
        if cert == best.cert {
            let gen = mapping(&best.lab, &p.lab);
            let to = common_prefix(&best.path, path);
            self.generators.push(gen);
            return Flow::Jump(to);
        }
        if cert < best.cert {
            self.best = Some(Leaf { lab: p.lab.clone(), cert, path: path.to_vec() });
        }
        Flow::Continue
    }

    /// Orbits of the group generated by known automorphisms that fix `path` pointwise.
    fn stabilizer_orbits(&self, path: &[u32]) -> UnionFind {
        let mut uf = UnionFind::new(self.n);
        for gen in &self.generators {
            if path.iter().all(|&v| gen[v as usize] == v) {
                for (v, &image) in gen.iter().enumerate() {
                    uf.union(v, image as usize);
                }
            }
        }
        uf
    }
}

/// The permutation sending `from[i]` to `to[i]`.
fn mapping(from: &[u32], to: &[u32]) -> Vec<u32> {
    let mut gen = vec![0; from.len()];
    for (a, b) in from.iter().zip(to) {
        gen[*a as usize] = *b;
    }
    gen
}

fn common_prefix(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(g: &Graph) -> CanonicalForm {
        canonical_form(g).unwrap()
    }

    #[test]
    fn relabeling_invariance_small() {
        let p3 = Graph::path(3).unwrap();
        let relabeled = p3.permuted(&[2, 0, 1]);
        assert_eq!(form(&p3), form(&relabeled));
        assert_ne!(form(&p3), form(&Graph::complete(3).unwrap()));
    }

    #[test]
    fn eleven_graphs_on_four_vertices() {
        let mut forms = alloc::collections::BTreeSet::new();
        for mask in 0u32..64 {
            let mut g = Graph::empty(4).unwrap();
            let mut bit = 0;
            for j in 1..4 {
                for i in 0..j {
                    if mask >> bit & 1 == 1 {
                        g.set_edge(i, j);
                    }
                    bit += 1;
                }
            }
            forms.insert(form(&g));
        }
        assert_eq!(forms.len(), 11);
    }

    #[test]
    fn isomorphism_examples() {
        let p4 = Graph::path(4).unwrap();
        assert!(are_isomorphic(&p4, &p4.permuted(&[3, 1, 0, 2])));
        assert!(!are_isomorphic(&Graph::cycle(4).unwrap(), &p4));
        // C3 ∪ K1 against the paw with one edge removed in different ways
        let c3k1 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let paw = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let mut drop_pendant = paw.clone();
        drop_pendant.remove_edge(2, 3);
        let mut drop_cycle_edge = paw.clone();
        drop_cycle_edge.remove_edge(0, 1);
        assert!(are_isomorphic(&c3k1, &drop_pendant));
        assert!(!are_isomorphic(&c3k1, &drop_cycle_edge));
    }

    #[test]
    fn certificate_encodes_the_canonical_graph() {
        let g = Graph::cycle(7).unwrap();
        let f = form(&g);
        assert_eq!(f.order(), 7);
        assert_eq!(f.edge_count(), 7);
        assert!(are_isomorphic(&f.to_graph(), &g));
        assert_eq!(form(&f.to_graph()), f);
    }

    #[test]
    fn orbits_of_small_graphs() {
        let p4 = Graph::path(4).unwrap();
        assert_eq!(automorphism_orbits(&p4), [0, 1, 1, 0]);
        let star = Graph::star(4).unwrap();
        assert_eq!(automorphism_orbits(&star), [0, 1, 1, 1, 1]);
        assert!(is_vertex_transitive(&Graph::cycle(9).unwrap()));
        assert!(is_vertex_transitive(&Graph::empty(5).unwrap()));
        assert!(!is_vertex_transitive(&Graph::path(3).unwrap()));
        assert!(same_orbit(&p4, 1, 2));
        assert!(!same_orbit(&p4, 0, 1));
    }

    #[test]
    fn large_sparse_graphs_are_fast_and_consistent() {
        // C_101 with one pendant at every vertex except one, relabelled
        let k = 101;
        let mut g = Graph::empty(2 * k - 1).unwrap();
        for v in 0..k {
            g.set_edge(v, (v + 1) % k);
        }
        for v in 1..k {
            g.set_edge(v, k + v - 1);
        }
        let perm: Vec<usize> = (0..g.order()).map(|v| (v * 37 + 11) % g.order()).collect();
        assert_eq!(form(&g), form(&g.permuted(&perm)));
        let many = Graph::path(40).unwrap().disjoint_union(&Graph::empty(150).unwrap()).unwrap();
        let shuffled: Vec<usize> = (0..190).map(|v| (v * 7 + 3) % 190).collect();
        assert_eq!(form(&many), form(&many.permuted(&shuffled)));
    }

    #[test]
    fn complete_and_empty_graphs() {
        for n in 0..12 {
            let k = Graph::complete(n).unwrap();
            assert_eq!(form(&k).to_graph(), k);
            assert_eq!(automorphism_orbits(&k), vec![0; n]);
        }
    }
}
