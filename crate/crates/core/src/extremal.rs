//! Exhaustive maximisation of common cards over pairs of graph classes, and
//! the bounds it is checked against.
//!
//! Cards are interned to dense ids once per search. An inverted index from card
//! id to the right-hand graphs holding it lets each left graph accumulate its
//! common-card counts against only the graphs it actually shares a card with.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use core::time::Duration;

use crate::canon::{canonical_form, CanonicalForm};
use crate::enumerate::{enumerate_class_forms, EnumerateError};
use crate::props::{girth, Distance, GraphClass};

/// Witness pairs kept per record by default.
pub const DEFAULT_WITNESS_LIMIT: usize = 20;

/// Which pairs of graphs of one order are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairRelation {
    /// One graph from each class.
    Classes(GraphClass, GraphClass),
    /// Any two graphs with different girth.
    DifferentGirth,
}

impl PairRelation {
    /// The two sides as printed in reports.
    pub fn labels(self) -> (&'static str, &'static str) {
        match self {
            PairRelation::Classes(a, b) => (a.name(), b.name()),
            PairRelation::DifferentGirth => ("girth", "different-girth"),
        }
    }
}

impl fmt::Display for PairRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.labels();
        write!(f, "{a} vs {b}")
    }
}

/// Result of one exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalRecord {
    pub n: usize,
    pub relation: PairRelation,
    /// Largest common-card count over all related pairs (0 when no pair shares a card).
    pub max_common: usize,
    /// Pairs attaining `max_common`, smallest first; empty when `max_common` is 0.
    pub witnesses: Vec<(CanonicalForm, CanonicalForm)>,
    pub witness_total: usize,
    /// Related pairs sharing at least one card.
    pub pairs_examined: u64,
    /// Wall-clock time, filled in by callers that can measure it.
    pub elapsed: Option<Duration>,
}

/// Partial maximum over a slice of left-hand graphs. Merging is associative and
/// commutative, so any split of the work gives the same record.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Partial {
    pub max: usize,
    /// Index pairs attaining `max`, sorted and truncated to the scan's limit.
    pub witnesses: Vec<(u32, u32)>,
    pub witness_total: usize,
    pub pairs_examined: u64,
}

impl Partial {
    pub fn merge(mut self, other: Partial, limit: usize) -> Partial {
        self.pairs_examined += other.pairs_examined;
        if other.max > self.max {
            return Partial { pairs_examined: self.pairs_examined, ..other };
        }
        if other.max == self.max {
            self.witness_total += other.witness_total;
            self.witnesses.extend(other.witnesses);
            self.witnesses.sort_unstable();
            self.witnesses.truncate(limit);
        }
        self
    }

    fn offer(&mut self, count: usize, pair: (u32, u32), limit: usize) {
        if count > self.max {
            self.max = count;
            self.witnesses.clear();
            self.witness_total = 0;
        }
        if count == self.max && count > 0 {
            self.witness_total += 1;
            if self.witnesses.len() < limit {
                self.witnesses.push(pair);
            }
        }
    }
}

#[derive(Debug, Clone)]
struct Entry {
    form: CanonicalForm,
    /// Distinct card ids with multiplicities.
    cards: Vec<(u32, u8)>,
    girth: Distance,
}

/// Precomputed decks and inverted index for one search.
#[derive(Debug, Clone)]
pub struct PairScan {
    n: usize,
    relation: PairRelation,
    left: Vec<Entry>,
    right: Vec<Entry>,
    /// True when both sides are the same list; then only `b >= a` is compared.
    same_side: bool,
    index: Vec<Vec<(u32, u8)>>,
    witness_limit: usize,
}

impl PairScan {
    pub fn new(n: usize, relation: PairRelation) -> Result<Self, EnumerateError> {
        let (a, b) = match relation {
            PairRelation::Classes(a, b) => (a, b),
            PairRelation::DifferentGirth => (GraphClass::All, GraphClass::All),
        };
        let mut interner = BTreeMap::new();
        let left = entries(enumerate_class_forms(n, a)?, &mut interner);
        let same_side = a == b;
        let right = if same_side { left.clone() } else { entries(enumerate_class_forms(n, b)?, &mut interner) };
        let mut index = vec![Vec::new(); interner.len()];
        for (j, e) in right.iter().enumerate() {
            for &(id, m) in &e.cards {
                index[id as usize].push((j as u32, m));
            }
        }
        Ok(PairScan { n, relation, left, right, same_side, index, witness_limit: DEFAULT_WITNESS_LIMIT })
    }

    /// Keeps up to `limit` witnesses instead of the default.
    pub fn with_witness_limit(mut self, limit: usize) -> Self {
        self.witness_limit = limit;
        self
    }

    pub fn witness_limit(&self) -> usize {
        self.witness_limit
    }

    pub fn left_len(&self) -> usize {
        self.left.len()
    }

    pub fn right_len(&self) -> usize {
        self.right.len()
    }

    /// Scans left-hand graphs `range` against every right-hand graph.
    pub fn scan(&self, range: Range<usize>) -> Partial {
        let mut acc = vec![0u32; self.right.len()];
        let mut touched: Vec<u32> = Vec::new();
        let mut out = Partial::default();
        for i in range {
            let entry = &self.left[i];
            for &(id, m) in &entry.cards {
                for &(j, mj) in &self.index[id as usize] {
                    if self.same_side && (j as usize) < i {
                        continue;
                    }
                    if acc[j as usize] == 0 {
                        touched.push(j);
                    }
                    acc[j as usize] += m.min(mj) as u32;
                }
            }
            touched.sort_unstable();
            for &j in &touched {
                let count = core::mem::take(&mut acc[j as usize]) as usize;
                if !self.related(entry, &self.right[j as usize]) {
                    continue;
                }
                out.pairs_examined += 1;
                out.offer(count, (i as u32, j), self.witness_limit);
            }
            touched.clear();
        }
        out
    }

    fn related(&self, a: &Entry, b: &Entry) -> bool {
        match self.relation {
            PairRelation::Classes(..) => true,
            PairRelation::DifferentGirth => a.girth != b.girth,
        }
    }

    /// Turns the merged partial of a full scan into a record.
    pub fn finish(&self, partial: Partial) -> ExtremalRecord {
        let witnesses = partial
            .witnesses
            .iter()
            .map(|&(i, j)| (self.left[i as usize].form.clone(), self.right[j as usize].form.clone()))
            .collect();
        ExtremalRecord {
            n: self.n,
            relation: self.relation,
            max_common: partial.max,
            witnesses,
            witness_total: partial.witness_total,
            pairs_examined: partial.pairs_examined,
            elapsed: None,
        }
    }
}

fn entries(forms: Vec<CanonicalForm>, interner: &mut BTreeMap<CanonicalForm, u32>) -> Vec<Entry> {
    forms
        .into_iter()
        .map(|form| {
            let g = form.to_graph();
            let mut cards: BTreeMap<u32, u8> = BTreeMap::new();
            for v in 0..g.order() {
                let card = canonical_form(&g.delete_vertex(v).expect("vertex in range")).expect("small order");
                let next = interner.len() as u32;
                let id = *interner.entry(card).or_insert(next);
                *cards.entry(id).or_insert(0) += 1;
            }
            Entry { form, cards: cards.into_iter().collect(), girth: girth(&g) }
        })
        .collect()
}

/// Exact maximum of common cards over all related pairs of order `n`, sequentially.
pub fn max_common_cards(n: usize, relation: PairRelation) -> Result<ExtremalRecord, EnumerateError> {
    let scan = PairScan::new(n, relation)?;
    let partial = scan.scan(0..scan.left_len());
    Ok(scan.finish(partial))
}

/// How a bound is backed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundStatus {
    /// Proven for every order; a violation is a failure.
    Theorem,
    /// Proven only for large orders; small orders are reported.
    Asymptotic,
    /// Open; small orders are reported.
    Conjecture,
}

impl BoundStatus {
    pub fn name(self) -> &'static str {
        match self {
            BoundStatus::Theorem => "theorem",
            BoundStatus::Asymptotic => "asymptotic",
            BoundStatus::Conjecture => "conjecture",
        }
    }
}

/// An upper bound on common cards between related pairs.
#[derive(Debug, Clone, Copy)]
pub struct BoundSpec {
    pub name: &'static str,
    pub relation: PairRelation,
    pub bound: fn(usize) -> usize,
    pub status: BoundStatus,
}

fn two(_: usize) -> usize {
    2
}

fn two_thirds_ceil(n: usize) -> usize {
    (2 * n).div_ceil(3)
}

fn five_sixths_plus_one(n: usize) -> usize {
    5 * n / 6 + 1
}

fn half_plus_one(n: usize) -> usize {
    n / 2 + 1
}

pub const BOUNDS: [BoundSpec; 7] = [
    BoundSpec {
        name: "multicyclic-forest",
        relation: PairRelation::Classes(GraphClass::MultiCyclic, GraphClass::Forest),
        bound: two,
        status: BoundStatus::Theorem,
    },
    BoundSpec {
        name: "forest-nonforest",
        relation: PairRelation::Classes(GraphClass::Forest, GraphClass::NonForest),
        // the contradiction argument rules out 2n/3 + 1 shared cards; the floor is
        // false at n = 4 (K1,3 and C4 share three P3 cards)
        bound: two_thirds_ceil,
        status: BoundStatus::Theorem,
    },
    BoundSpec {
        name: "girth",
        relation: PairRelation::DifferentGirth,
        bound: two_thirds_ceil,
        status: BoundStatus::Theorem,
    },
    BoundSpec {
        name: "bipartite",
        relation: PairRelation::Classes(GraphClass::Bipartite, GraphClass::NonBipartite),
        bound: five_sixths_plus_one,
        status: BoundStatus::Theorem,
    },
    BoundSpec {
        name: "forest-nonforest-half",
        relation: PairRelation::Classes(GraphClass::Forest, GraphClass::NonForest),
        bound: half_plus_one,
        status: BoundStatus::Asymptotic,
    },
    BoundSpec {
        name: "girth-half",
        relation: PairRelation::DifferentGirth,
        bound: half_plus_one,
        status: BoundStatus::Conjecture,
    },
    BoundSpec {
        name: "bipartite-half",
        relation: PairRelation::Classes(GraphClass::Bipartite, GraphClass::NonBipartite),
        bound: half_plus_one,
        status: BoundStatus::Conjecture,
    },
];

pub fn bound_by_name(name: &str) -> Option<&'static BoundSpec> {
    BOUNDS.iter().find(|b| b.name == name)
}

/// One row of a bound check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    pub bound: usize,
    pub status: BoundStatus,
    pub record: ExtremalRecord,
}

impl BoundRow {
    pub fn holds(&self) -> bool {
        self.record.max_common <= self.bound
    }

    pub fn tight(&self) -> bool {
        self.record.max_common == self.bound
    }

    /// True only for a violated theorem.
    pub fn is_failure(&self) -> bool {
        self.status == BoundStatus::Theorem && !self.holds()
    }
}

/// Checks `spec` at every order in `orders`, using `search` for each maximum.
pub fn verify_bound<F, E>(spec: &BoundSpec, orders: Range<usize>, mut search: F) -> Result<Vec<BoundRow>, E>
where
    F: FnMut(usize, PairRelation) -> Result<ExtremalRecord, E>,
{
    orders
        .map(|n| {
            Ok(BoundRow { bound: (spec.bound)(n), status: spec.status, record: search(n, spec.relation)? })
        })
        .collect()
}
