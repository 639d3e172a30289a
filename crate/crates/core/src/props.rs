//! Structural predicates: classification, girth, bipartiteness, longest paths
//! and diameter.
//!
//! Path lengths are counted in vertices throughout (a cycle on `L` vertices minus
//! one vertex has a longest path of order `L - 1`). Cycle lengths count vertices,
//! which for a cycle equals its edge count.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::graph::Graph;

/// Largest component order for which [`longest_path_order`] runs the exact
/// subset dynamic program on a component that is not a tree.
pub const LONGEST_PATH_CAP: usize = 24;

/// A non-negative length that may be infinite (girth of a forest, diameter of a
/// disconnected graph). `Finite(_) < Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("infinity"),
        }
    }
}

/// Number of cycles, capped at "two or more".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CycleCount {
    None,
    One,
    Many,
}

/// Summary of the structural facts every class predicate is derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub order: usize,
    pub edges: usize,
    pub components: usize,
    /// Order of the largest component.
    pub largest_component: usize,
    pub bipartite: bool,
}

impl Classification {
    /// `e - n + κ`, the number of independent cycles.
    pub fn cyclomatic_number(&self) -> usize {
        self.edges + self.components - self.order
    }

    pub fn connected(&self) -> bool {
        self.components <= 1
    }

    pub fn forest(&self) -> bool {
        self.cyclomatic_number() == 0
    }

    pub fn tree(&self) -> bool {
        self.forest() && self.components == 1
    }

    /// Exactly one cycle (a graph with cyclomatic number one has exactly one cycle).
    pub fn unicyclic(&self) -> bool {
        self.cyclomatic_number() == 1
    }

    pub fn cycles(&self) -> CycleCount {
        match self.cyclomatic_number() {
            0 => CycleCount::None,
            1 => CycleCount::One,
            _ => CycleCount::Many,
        }
    }
}

pub fn classify(g: &Graph) -> Classification {
    let comps = g.components();
    Classification {
        order: g.order(),
        edges: g.edge_count(),
        components: comps.len(),
        largest_component: comps.iter().map(Vec::len).max().unwrap_or(0),
        bipartite: is_bipartite(g),
    }
}

/// Graph classes used to select sides of an extremal search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphClass {
    All,
    Tree,
    Forest,
    /// Exactly one cycle (not necessarily connected).
    Unicyclic,
    Connected,
    Disconnected,
    Bipartite,
    NonBipartite,
    NonForest,
    /// Two or more cycles.
    MultiCyclic,
}

impl GraphClass {
    pub const ALL: [GraphClass; 10] = [
        GraphClass::All,
        GraphClass::Tree,
        GraphClass::Forest,
        GraphClass::Unicyclic,
        GraphClass::Connected,
        GraphClass::Disconnected,
        GraphClass::Bipartite,
        GraphClass::NonBipartite,
        GraphClass::NonForest,
        GraphClass::MultiCyclic,
    ];

    pub fn contains(self, c: &Classification) -> bool {
        match self {
            GraphClass::All => true,
            GraphClass::Tree => c.tree(),
            GraphClass::Forest => c.forest(),
            GraphClass::Unicyclic => c.unicyclic(),
            GraphClass::Connected => c.connected(),
            GraphClass::Disconnected => !c.connected(),
            GraphClass::Bipartite => c.bipartite,
            GraphClass::NonBipartite => !c.bipartite,
            GraphClass::NonForest => !c.forest(),
            GraphClass::MultiCyclic => c.cycles() == CycleCount::Many,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::All => "all",
            GraphClass::Tree => "tree",
            GraphClass::Forest => "forest",
            GraphClass::Unicyclic => "unicyclic",
            GraphClass::Connected => "connected",
            GraphClass::Disconnected => "disconnected",
            GraphClass::Bipartite => "bipartite",
            GraphClass::NonBipartite => "non-bipartite",
            GraphClass::NonForest => "non-forest",
            GraphClass::MultiCyclic => "multicyclic",
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownClass;

impl fmt::Display for UnknownClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown graph class (expected one of: ")?;
        for (i, c) in GraphClass::ALL.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(c.name())?;
        }
        f.write_str(")")
    }
}

impl core::error::Error for UnknownClass {}

impl FromStr for GraphClass {
    type Err = UnknownClass;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        GraphClass::ALL.iter().copied().find(|c| c.name() == key).ok_or(UnknownClass)
    }
}

/// Length of a shortest cycle, by a breadth-first search from every vertex.
pub fn girth(g: &Graph) -> Distance {
    let n = g.order();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist.fill(usize::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        queue.clear();
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            // no shorter cycle through s can be closed beyond this depth
            if 2 * dist[v] + 1 >= best {
                break;
            }
            for w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    best = best.min(dist[v] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Distance::Infinite
    } else {
        Distance::Finite(best)
    }
}

/// Two-colourability by breadth-first search.
pub fn is_bipartite(g: &Graph) -> bool {
    let n = g.order();
    let mut color = vec![u8::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathError {
    /// A component with a cycle is too large for the exact subset program.
    ComponentTooLarge { order: usize, cap: usize },
}

impl fmt::Display for PathError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathError::ComponentTooLarge { order, cap } => write!(
                f,
                "longest path needs the exact subset program on a cyclic component of order {order} (cap {cap})"
            ),
        }
    }
}

impl core::error::Error for PathError {}

/// Number of vertices on a longest simple path.
///
/// Tree components use a double breadth-first sweep; other components run an
/// exact dynamic program over vertex subsets, capped at [`LONGEST_PATH_CAP`].
pub fn longest_path_order(g: &Graph) -> Result<usize, PathError> {
    let mut best = 0;
    for comp in g.components() {
        let sub = g.induced(&comp);
        let k = sub.order();
        let len = if sub.edge_count() + 1 == k {
            tree_longest_path(&sub)
        } else if k > LONGEST_PATH_CAP {
            return Err(PathError::ComponentTooLarge { order: k, cap: LONGEST_PATH_CAP });
        } else {
            subset_longest_path(&sub)
        };
        best = best.max(len);
    }
    Ok(best)
}

fn tree_longest_path(t: &Graph) -> usize {
    let far = |s: usize| {
        let d = t.bfs_distances(s);
        let (v, &dist) = d.iter().enumerate().max_by_key(|&(v, &dist)| (dist, core::cmp::Reverse(v))).unwrap();
        (v, dist)
    };
    let (a, _) = far(0);
    let (_, dist) = far(a);
    dist + 1
}

fn subset_longest_path(g: &Graph) -> usize {
    let k = g.order();
    if k == 0 {
        return 0;
    }
    let nbr: Vec<u32> = (0..k).map(|v| g.row(v)[0] as u32).collect();
    // ends[mask]: endpoints of simple paths visiting exactly `mask`
    let mut ends = vec![0u32; 1 << k];
    for v in 0..k {
        ends[1 << v] = 1 << v;
    }
    let mut best = 1;
    for mask in 1usize..(1 << k) {
        let mut e = ends[mask];
        if e == 0 {
            continue;
        }
        best = best.max(mask.count_ones() as usize);
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut next = nbr[v] & !(mask as u32);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                ends[mask | 1 << w] |= 1 << w;
            }
        }
    }
    best
}

/// Largest shortest-path distance in edges; infinite for disconnected graphs.
pub fn diameter(g: &Graph) -> Distance {
    let mut best = 0;
    for s in 0..g.order() {
        for d in g.bfs_distances(s) {
            if d == usize::MAX {
                return Distance::Infinite;
            }
            best = best.max(d);
        }
    }
    Distance::Finite(best)
}
