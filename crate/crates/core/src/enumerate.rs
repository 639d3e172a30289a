//! Exhaustive generation of non-isomorphic graphs by canonical augmentation.
//!
//! Graphs of order `n` are built from the canonical representatives of order
//! `n - 1` by adding one vertex joined to a subset of the old vertices. Subsets
//! are taken up to the automorphisms of the parent, and a child is kept only when
//! its new vertex lies in the automorphism orbit of its canonical deletion vertex
//! (the vertex labelled last by the canonical labelling). Every isomorphism class
//! then has exactly one accepting parent, which is also why generation has to
//! stay inside a hereditary class.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::canon::{automorphism_generators, canonical_labeling, same_orbit, CanonicalForm};
use crate::graph::Graph;
use crate::props::{classify, GraphClass};

/// Cap for classes that need every graph of the order.
pub const ALL_GRAPHS_CAP: usize = 8;
/// Cap for trees, forests and unicyclic graphs.
pub const SPARSE_CLASS_CAP: usize = 13;
/// Subset enumeration works on `u64` masks and a visited table of `2^k` bits.
pub const MAX_SUBSET_BITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    CapExceeded { class: GraphClass, n: usize, cap: usize },
}

impl fmt::Display for EnumerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerateError::CapExceeded { class, n, cap } => {
                write!(f, "enumerating class {class} at order {n} exceeds its cap {cap}")
            }
        }
    }
}

impl core::error::Error for EnumerateError {}

/// Hereditary families the generator can walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    All,
    Forests,
    AtMostOneCycle,
}

impl Family {
    fn for_class(class: GraphClass) -> Family {
        match class {
            GraphClass::Tree | GraphClass::Forest => Family::Forests,
            GraphClass::Unicyclic => Family::AtMostOneCycle,
            _ => Family::All,
        }
    }

    fn cap(self) -> usize {
        match self {
            Family::All => ALL_GRAPHS_CAP,
            Family::Forests | Family::AtMostOneCycle => SPARSE_CLASS_CAP,
        }
    }

    fn admits(self, g: &Graph) -> bool {
        match self {
            Family::All => true,
            Family::Forests => classify(g).forest(),
            Family::AtMostOneCycle => classify(g).cyclomatic_number() <= 1,
        }
    }
}

/// Largest order [`enumerate_class`] accepts for `class`.
pub fn class_cap(class: GraphClass) -> usize {
    Family::for_class(class).cap()
}

/// Every graph of order `n` in `class`, one per isomorphism class, as canonical
/// representatives sorted by certificate.
pub fn enumerate_class(n: usize, class: GraphClass) -> Result<Vec<Graph>, EnumerateError> {
    Ok(enumerate_class_forms(n, class)?.into_iter().map(|f| f.to_graph()).collect())
}

/// Like [`enumerate_class`] but yields the certificates.
pub fn enumerate_class_forms(n: usize, class: GraphClass) -> Result<Vec<CanonicalForm>, EnumerateError> {
    let family = Family::for_class(class);
    if n > family.cap() {
        return Err(EnumerateError::CapExceeded { class, n, cap: family.cap() });
    }
    Ok(generate(n, family)
        .into_iter()
        .filter(|f| class.contains(&classify(&f.to_graph())))
        .collect())
}

fn generate(n: usize, family: Family) -> Vec<CanonicalForm> {
    let k0 = Graph::empty(0).expect("order 0");
    let mut level = vec![crate::canon::canonical_form(&k0).expect("order 0")];
    for _ in 0..n {
        let mut next = Vec::new();
        for parent in &level {
            next.extend(children(&parent.to_graph(), family));
        }
        next.sort_unstable();
        debug_assert!(next.windows(2).all(|w| w[0] != w[1]), "canonical augmentation produced a duplicate");
        level = next;
    }
    level
}

/// Accepted children of one canonical parent, deduplicated.
fn children(parent: &Graph, family: Family) -> BTreeSet<CanonicalForm> {
    let k = parent.order();
    let generators = automorphism_generators(parent);
    let mut out = BTreeSet::new();
    for mask in subset_orbit_representatives(k, &generators) {
        let child = parent.extended(mask).expect("orders stay below the cap");
        if !family.admits(&child) {
            continue;
        }
        let perm = canonical_labeling(&child).expect("orders stay below the cap");
        let last = perm.iter().position(|&p| p == k).expect("labelling is a permutation");
        if last != k && !plausibly_same_orbit(&child, k, last) {
            continue;
        }
        if last != k && !same_orbit(&child, k, last) {
            continue;
        }
        out.insert(CanonicalForm::from_labeling(&child, &perm));
    }
    out
}

/// Cheap necessary condition for two vertices to share an orbit.
fn plausibly_same_orbit(g: &Graph, u: usize, v: usize) -> bool {
    let profile = |x: usize| {
        let mut d: Vec<usize> = g.neighbors(x).map(|y| g.degree(y)).collect();
        d.sort_unstable();
        d
    };
    g.degree(u) == g.degree(v) && profile(u) == profile(v)
}

/// One subset of `0..k` from every orbit of the group generated by `generators`,
/// in increasing mask order. Each generator maps `v` to `gen[v]`.
pub(crate) fn subset_orbit_representatives(k: usize, generators: &[Vec<usize>]) -> Vec<u64> {
    assert!(k <= MAX_SUBSET_BITS, "subset enumeration limited to {MAX_SUBSET_BITS} vertices");
    let total = 1usize << k;
    if generators.is_empty() {
        return (0..total as u64).collect();
    }
    let mut seen = vec![0u64; total.div_ceil(64)];
    let mut reps = Vec::new();
    let mut stack = Vec::new();
    for mask in 0..total {
        if seen[mask / 64] >> (mask % 64) & 1 == 1 {
            continue;
        }
        reps.push(mask as u64);
        seen[mask / 64] |= 1 << (mask % 64);
        stack.push(mask as u64);
        while let Some(m) = stack.pop() {
            for gen in generators {
                let image = apply(gen, m) as usize;
                if seen[image / 64] >> (image % 64) & 1 == 0 {
                    seen[image / 64] |= 1 << (image % 64);
                    stack.push(image as u64);
                }
            }
        }
    }
    reps
}

fn apply(gen: &[usize], mut mask: u64) -> u64 {
    let mut out = 0;
    while mask != 0 {
        let v = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        out |= 1 << gen[v];
    }
    out
}
