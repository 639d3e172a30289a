//! Forest / unicyclic pairs sharing `⌊n/2⌋ + 1` cards, the star operator, and
//! the connected graphs attaining the component-count bound.

use alloc::vec::Vec;
use core::fmt;

use crate::canon::is_vertex_transitive;
use crate::graph::{Graph, GraphError, MAX_ORDER};
use crate::props::classify;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    Graph(GraphError),
    UnknownFamily(u8),
    ParameterTooSmall { family: u8, k: usize, min: usize },
    ParameterTooLarge { family: u8, k: usize, max: usize },
    NotVertexTransitive,
    /// The host cycle would have fewer than three vertices or too few for the copies.
    Infeasible { cycle: usize, copies: usize },
    Hypothesis(&'static str),
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::Graph(e) => e.fmt(f),
            FamilyError::UnknownFamily(id) => write!(f, "unknown family {id} (expected 1, 2 or 3)"),
            FamilyError::ParameterTooSmall { family, k, min } => {
                write!(f, "family {family} needs k >= {min}, got {k}")
            }
            FamilyError::ParameterTooLarge { family, k, max } => {
                write!(f, "family {family} with k = {k} exceeds the order cap (k <= {max})")
            }
            FamilyError::NotVertexTransitive => {
                write!(f, "star minus a leaf is not well-defined: graph is not vertex-transitive")
            }
            FamilyError::Infeasible { cycle, copies } => {
                write!(f, "cannot attach {copies} copies to a cycle of order {cycle}")
            }
            FamilyError::Hypothesis(what) => write!(f, "precondition violated: {what}"),
        }
    }
}

impl core::error::Error for FamilyError {}

impl From<GraphError> for FamilyError {
    fn from(e: GraphError) -> Self {
        FamilyError::Graph(e)
    }
}

/// `G` with a new pendant leaf on every vertex. Leaf of `v` is `n + v`.
pub fn star(g: &Graph) -> Result<Graph, FamilyError> {
    let n = g.order();
    let mut s = g.disjoint_union(&Graph::empty(n)?)?;
    for v in 0..n {
        s.add_edge(v, n + v)?;
    }
    Ok(s)
}

/// `star(G)` minus one leaf; only well-defined for vertex-transitive `G`.
pub fn star_minus_leaf(g: &Graph) -> Result<Graph, FamilyError> {
    if !is_vertex_transitive(g) {
        return Err(FamilyError::NotVertexTransitive);
    }
    let n = g.order();
    let s = star(g)?;
    if n == 0 {
        return Ok(s);
    }
    Ok(s.delete_vertex(n)?)
}

/// One forest / unicyclic pair of a family, with the common-card count the
/// construction is known to attain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub family: u8,
    pub k: usize,
    pub n: usize,
    pub forest: Graph,
    pub unicyclic: Graph,
    pub expected_common: usize,
}

/// Smallest admissible `k` for each family.
pub const MIN_K: usize = 2;

/// Largest `k` whose family order fits in [`MAX_ORDER`].
pub fn max_k(family: u8) -> Option<usize> {
    match family {
        1 | 3 => Some((MAX_ORDER - 1) / 2),
        2 => Some((MAX_ORDER + 1) / 4),
        _ => None,
    }
}

/// Order of the family-`id` pair with parameter `k`.
pub fn family_order(id: u8, k: usize) -> Option<usize> {
    match id {
        1 | 3 => Some(2 * k + 1),
        2 => (4 * k).checked_sub(1),
        _ => None,
    }
}

fn union_all(parts: &[Graph]) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(0)?;
    for p in parts {
        g = g.disjoint_union(p)?;
    }
    Ok(g)
}

fn copies(g: &Graph, times: usize) -> Vec<Graph> {
    (0..times).map(|_| g.clone()).collect()
}

/// Builds the pair of family `id`:
///
/// * 1: `P_k ∪ (k+1)K_1` and `C_{k+1} ∪ kK_1`, order `2k+1`;
/// * 2: `P_{2k-1} ∪ kK_2` and `C_{2k} ∪ (k-1)K_2 ∪ K_1`, order `4k-1`;
/// * 3: `S[P_k] ∪ K_1` and `S[C_{k+1}]'`, order `2k+1`.
pub fn family(id: u8, k: usize) -> Result<FamilyInstance, FamilyError> {
    let max = max_k(id).ok_or(FamilyError::UnknownFamily(id))?;
    if k < MIN_K {
        return Err(FamilyError::ParameterTooSmall { family: id, k, min: MIN_K });
    }
    if k > max {
        return Err(FamilyError::ParameterTooLarge { family: id, k, max });
    }
    let k1 = Graph::empty(1)?;
    let k2 = Graph::complete(2)?;
    let (forest, unicyclic) = match id {
        1 => {
            let mut f = Vec::from([Graph::path(k)?]);
            f.extend(copies(&k1, k + 1));
            let mut g = Vec::from([Graph::cycle(k + 1)?]);
            g.extend(copies(&k1, k));
            (union_all(&f)?, union_all(&g)?)
        }
        2 => {
            let mut f = Vec::from([Graph::path(2 * k - 1)?]);
            f.extend(copies(&k2, k));
            let mut g = Vec::from([Graph::cycle(2 * k)?]);
            g.extend(copies(&k2, k - 1));
            g.push(k1.clone());
            (union_all(&f)?, union_all(&g)?)
        }
        _ => {
            let f = star(&Graph::path(k)?)?.disjoint_union(&k1)?;
            let g = star_minus_leaf(&Graph::cycle(k + 1)?)?;
            (f, g)
        }
    };
    let n = forest.order();
    debug_assert_eq!(Some(n), family_order(id, k));
    debug_assert_eq!(unicyclic.order(), n);
    Ok(FamilyInstance { family: id, k, n, forest, unicyclic, expected_common: n / 2 + 1 })
}

impl FamilyInstance {
    /// Checks order, forest-ness and unicyclicity.
    pub fn invariants_hold(&self) -> bool {
        let f = classify(&self.forest);
        let g = classify(&self.unicyclic);
        self.forest.order() == self.n
            && self.unicyclic.order() == self.n
            && family_order(self.family, self.k) == Some(self.n)
            && f.forest()
            && g.unicyclic()
    }
}

/// A connected graph of order `n` with the largest possible number of cards
/// having a component isomorphic to `h`: a cycle on `n - k·q` vertices with a
/// copy of `h` (joined through its vertex 0 by one edge) hanging off `q`
/// consecutive cycle vertices, where `k = v(h)` and `q = ⌊n/(k+1)⌋`.
pub fn component_bound_extremal(h: &Graph, n: usize) -> Result<Graph, FamilyError> {
    let k = h.order();
    if k == 0 || !h.is_connected() {
        return Err(FamilyError::Hypothesis("H must be connected and non-empty"));
    }
    if 2 * k >= n {
        return Err(FamilyError::Hypothesis("v(H) must be less than n/2"));
    }
    let q = n / (k + 1);
    let cycle = n - k * q;
    if cycle < 3 || cycle < q {
        return Err(FamilyError::Infeasible { cycle, copies: q });
    }
    let mut g = Graph::cycle(cycle)?;
    for i in 0..q {
        let base = g.order();
        g = g.disjoint_union(h)?;
        g.add_edge(i, base)?;
    }
    Ok(g)
}
