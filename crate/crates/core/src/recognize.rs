//! Deciding properties of the parent graph from a partial deck.
//!
//! Cheap sufficient rules are tried first. When none fires, the subdeck is
//! handed to the preimage oracle, which lists every graph whose full deck
//! contains it; the property is decided when all of those agree.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::canon::{automorphism_generators, canonical_form, CanonicalForm};
use crate::deck::{deck_contains, full_deck, DeckError, Subdeck};
use crate::enumerate::subset_orbit_representatives;
use crate::graph::Graph;
use crate::props::{classify, girth, is_bipartite, longest_path_order, Distance};

/// Default largest parent order the oracle will attempt.
pub const DEFAULT_ORACLE_CAP: usize = 11;
/// Hard ceiling on the oracle cap.
pub const MAX_ORACLE_CAP: usize = 16;
/// Preimages listed in a verdict beyond this many are only counted.
pub const WITNESS_LIMIT: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Tree,
    Forest,
    Connected,
    Bipartite,
    Girth,
}

impl Property {
    pub const ALL: [Property; 5] =
        [Property::Tree, Property::Forest, Property::Connected, Property::Bipartite, Property::Girth];

    pub fn name(self) -> &'static str {
        match self {
            Property::Tree => "tree",
            Property::Forest => "forest",
            Property::Connected => "connected",
            Property::Bipartite => "bipartite",
            Property::Girth => "girth",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = RecognizeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        if key == "girth-value" {
            return Ok(Property::Girth);
        }
        Property::ALL.iter().copied().find(|p| p.name() == key).ok_or(RecognizeError::UnsupportedProperty)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Holds,
    Fails,
    Value(Distance),
    Ambiguous,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decision::Holds => f.write_str("holds"),
            Decision::Fails => f.write_str("fails"),
            Decision::Value(d) => write!(f, "value({d})"),
            Decision::Ambiguous => f.write_str("ambiguous"),
        }
    }
}

/// Sufficient rules that decide without the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// A card contains a cycle, so the parent is not a forest.
    CycleOnCard,
    /// A card is not bipartite, so neither is the parent.
    OddCycleOnCard,
    /// The smallest card girth `g` satisfies `g < |sub|`, so a shortest cycle of
    /// the parent misses some chosen vertex and shows up on its card.
    VisibleGirth,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::CycleOnCard => "cycle-on-card",
            Rule::OddCycleOnCard => "odd-cycle-on-card",
            Rule::VisibleGirth => "visible-girth",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    DirectRule(Rule),
    PreimageOracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::DirectRule(_) => "direct-rule",
            Method::PreimageOracle => "preimage-oracle",
        }
    }
}

/// Outcome of [`recognize`]. `witnesses` lists consistent preimages (at most
/// [`WITNESS_LIMIT`]) and `witness_count` counts all of them; both are empty
/// when a direct rule decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub property: Property,
    pub decision: Decision,
    pub method: Method,
    pub n: usize,
    pub subdeck_size: usize,
    pub witnesses: Vec<CanonicalForm>,
    pub witness_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecognizeError {
    EmptySubdeck,
    UnsupportedProperty,
    /// Parent order above the oracle cap.
    CapExceeded { n: usize, cap: usize },
    InvalidCap { cap: usize, max: usize },
    /// No rule fired and the oracle cannot run at this order.
    Undecidable { n: usize, cap: usize },
    /// No graph of the parent order has a deck containing the subdeck.
    NoPreimage,
    SubdeckTooSmall { size: usize, needed: usize },
    /// Some card has a cycle, so the hidden-cycle rule does not apply.
    CardNotForest,
    Deck(DeckError),
}

impl fmt::Display for RecognizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecognizeError::EmptySubdeck => f.write_str("subdeck is empty"),
            RecognizeError::UnsupportedProperty => {
                f.write_str("unsupported property (expected tree, forest, connected, bipartite or girth)")
            }
            RecognizeError::CapExceeded { n, cap } => {
                write!(f, "parent order {n} exceeds the oracle cap {cap}")
            }
            RecognizeError::InvalidCap { cap, max } => write!(f, "oracle cap {cap} exceeds the maximum {max}"),
            RecognizeError::Undecidable { n, cap } => {
                write!(f, "undecidable at this scale: no rule fired and n = {n} exceeds the oracle cap {cap}")
            }
            RecognizeError::NoPreimage => f.write_str("no graph has a deck containing this subdeck"),
            RecognizeError::SubdeckTooSmall { size, needed } => {
                write!(f, "subdeck has {size} cards, the rule needs at least {needed}")
            }
            RecognizeError::CardNotForest => f.write_str("hidden-cycle rule needs every card to be a forest"),
            RecognizeError::Deck(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for RecognizeError {}

impl From<DeckError> for RecognizeError {
    fn from(e: DeckError) -> Self {
        RecognizeError::Deck(e)
    }
}

/// One-vertex extensions of the smallest card of a subdeck, one neighbourhood
/// per orbit of the card's automorphism group.
#[derive(Debug, Clone)]
pub struct ExtensionPlan {
    base: Graph,
    masks: Vec<u64>,
}

impl ExtensionPlan {
    pub fn new(sub: &Subdeck, cap: usize) -> Result<Self, RecognizeError> {
        if cap > MAX_ORACLE_CAP {
            return Err(RecognizeError::InvalidCap { cap, max: MAX_ORACLE_CAP });
        }
        let card = sub.cards().first().ok_or(RecognizeError::EmptySubdeck)?;
        let n = sub.parent_order();
        if n > cap {
            return Err(RecognizeError::CapExceeded { n, cap });
        }
        let base = card.to_graph();
        let masks = subset_orbit_representatives(base.order(), &automorphism_generators(&base));
        Ok(ExtensionPlan { base, masks })
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    /// Canonical form of the card plus a vertex joined to `mask`.
    pub fn extend(&self, mask: u64) -> CanonicalForm {
        let g = self.base.extended(mask).expect("oracle orders are far below the order cap");
        canonical_form(&g).expect("oracle orders are far below the order cap")
    }
}

/// True when the full deck of `candidate` contains `sub`.
pub fn is_consistent(candidate: &CanonicalForm, sub: &Subdeck) -> Result<bool, RecognizeError> {
    Ok(deck_contains(&full_deck(&candidate.to_graph())?, sub)?)
}

/// Every graph of order `sub.parent_order()` whose deck contains `sub`, sorted
/// by certificate.
pub fn preimage_search(sub: &Subdeck, cap: usize) -> Result<Vec<CanonicalForm>, RecognizeError> {
    let plan = ExtensionPlan::new(sub, cap)?;
    let candidates: BTreeSet<CanonicalForm> = plan.masks().iter().map(|&m| plan.extend(m)).collect();
    let mut out = Vec::new();
    for c in candidates {
        if is_consistent(&c, sub)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// A fired direct rule, if any.
pub fn direct_rule(sub: &Subdeck, property: Property) -> Option<(Decision, Rule)> {
    let cards: Vec<Graph> = sub.cards().iter().map(|(c, _)| c.to_graph()).collect();
    match property {
        Property::Tree | Property::Forest => cards
            .iter()
            .any(|c| !classify(c).forest())
            .then_some((Decision::Fails, Rule::CycleOnCard)),
        Property::Bipartite => {
            cards.iter().any(|c| !is_bipartite(c)).then_some((Decision::Fails, Rule::OddCycleOnCard))
        }
        Property::Girth => {
            let g = cards.iter().map(girth).min()?;
            match g {
                Distance::Finite(len) if len < sub.len() => Some((Decision::Value(g), Rule::VisibleGirth)),
                _ => None,
            }
        }
        Property::Connected => None,
    }
}

/// Decides `property` for the parent of `sub` with the sequential oracle.
pub fn recognize(sub: &Subdeck, property: Property, cap: usize) -> Result<Verdict, RecognizeError> {
    recognize_with(sub, property, cap, preimage_search)
}

/// [`recognize`] with a caller-supplied oracle (used for the parallel one).
pub fn recognize_with<F>(sub: &Subdeck, property: Property, cap: usize, oracle: F) -> Result<Verdict, RecognizeError>
where
    F: FnOnce(&Subdeck, usize) -> Result<Vec<CanonicalForm>, RecognizeError>,
{
    if sub.is_empty() {
        return Err(RecognizeError::EmptySubdeck);
    }
    let n = sub.parent_order();
    let mut verdict = Verdict {
        property,
        decision: Decision::Ambiguous,
        method: Method::PreimageOracle,
        n,
        subdeck_size: sub.len(),
        witnesses: Vec::new(),
        witness_count: 0,
    };
    if let Some((decision, rule)) = direct_rule(sub, property) {
        verdict.decision = decision;
        verdict.method = Method::DirectRule(rule);
        return Ok(verdict);
    }
    let preimages = match oracle(sub, cap) {
        Err(RecognizeError::CapExceeded { n, cap }) => return Err(RecognizeError::Undecidable { n, cap }),
        other => other?,
    };
    if preimages.is_empty() {
        return Err(RecognizeError::NoPreimage);
    }
    let values: BTreeSet<Decision> = preimages.iter().map(|p| evaluate(&p.to_graph(), property)).collect();
    verdict.decision = if values.len() == 1 { *values.first().expect("nonempty") } else { Decision::Ambiguous };
    verdict.witness_count = preimages.len();
    verdict.witnesses = preimages;
    verdict.witnesses.truncate(WITNESS_LIMIT);
    Ok(verdict)
}

/// The truth about a known graph, phrased as a decision.
pub fn evaluate(g: &Graph, property: Property) -> Decision {
    let c = classify(g);
    let truth = match property {
        Property::Tree => c.tree(),
        Property::Forest => c.forest(),
        Property::Connected => c.connected(),
        Property::Bipartite => c.bipartite,
        Property::Girth => return Decision::Value(girth(g)),
    };
    if truth {
        Decision::Holds
    } else {
        Decision::Fails
    }
}

// ordering only serves deduplication above
impl PartialOrd for Decision {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Decision {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        let key = |d: &Decision| match d {
            Decision::Holds => (0, None),
            Decision::Fails => (1, None),
            Decision::Value(v) => (2, Some(*v)),
            Decision::Ambiguous => (3, None),
        };
        key(self).cmp(&key(other))
    }
}

/// Hidden-cycle girth candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HiddenGirth {
    /// `1 +` the smallest longest-path order over the cards.
    pub candidate: usize,
    /// Set once the parent is known to contain a cycle; until then the candidate
    /// is only conditional.
    pub certified: bool,
}

/// `1 +` the minimum over cards of the longest path order, when every card is a
/// forest. If the parent has a cycle this is its girth, provided enough cards
/// were seen.
pub fn hidden_cycle_length(sub: &Subdeck) -> Result<usize, RecognizeError> {
    let mut best = usize::MAX;
    for (card, _) in sub.cards().iter() {
        let g = card.to_graph();
        if !classify(&g).forest() {
            return Err(RecognizeError::CardNotForest);
        }
        best = best.min(longest_path_order(&g).expect("forests never hit the path cap"));
    }
    if best == usize::MAX {
        return Err(RecognizeError::EmptySubdeck);
    }
    Ok(best + 1)
}

/// Smallest subdeck the hidden-cycle rule accepts: `⌈2n/3⌉ + 1`.
pub fn hidden_cycle_threshold(n: usize) -> usize {
    (2 * n).div_ceil(3) + 1
}

/// Conditional hidden-cycle girth of the parent of `sub`.
pub fn girth_direct(sub: &Subdeck) -> Result<HiddenGirth, RecognizeError> {
    let needed = hidden_cycle_threshold(sub.parent_order());
    if sub.len() < needed {
        return Err(RecognizeError::SubdeckTooSmall { size: sub.len(), needed });
    }
    Ok(HiddenGirth { candidate: hidden_cycle_length(sub)?, certified: false })
}

/// [`girth_direct`], certified when every consistent preimage has a cycle.
pub fn girth_direct_certified(sub: &Subdeck, cap: usize) -> Result<HiddenGirth, RecognizeError> {
    let mut hidden = girth_direct(sub)?;
    let preimages = preimage_search(sub, cap)?;
    if preimages.is_empty() {
        return Err(RecognizeError::NoPreimage);
    }
    hidden.certified = preimages.iter().all(|p| !classify(&p.to_graph()).forest());
    Ok(hidden)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deck::full_deck;

    fn g(edges: &[(usize, usize)], n: usize) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn forms(gs: &[Graph]) -> Vec<CanonicalForm> {
        let mut v: Vec<_> = gs.iter().map(|x| canonical_form(x).unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn preimages_of_small_subdecks() {
        let p3 = Graph::path(3).unwrap();
        let sub = full_deck(&p3).unwrap().to_subdeck();
        assert_eq!(preimage_search(&sub, 11).unwrap(), forms(std::slice::from_ref(&p3)));

        let k2 = Subdeck::from_graphs(3, [&Graph::complete(2).unwrap()]).unwrap();
        let expected = forms(&[p3.clone(), Graph::complete(3).unwrap(), g(&[(0, 1)], 3)]);
        assert_eq!(preimage_search(&k2, 11).unwrap(), expected);

        let e2 = Subdeck::from_graphs(3, [&Graph::empty(2).unwrap()]).unwrap();
        let expected = forms(&[p3, g(&[(0, 1)], 3), Graph::empty(3).unwrap()]);
        assert_eq!(preimage_search(&e2, 11).unwrap(), expected);
    }

    #[test]
    fn cap_errors() {
        let sub = full_deck(&Graph::path(5).unwrap()).unwrap().to_subdeck();
        assert_eq!(preimage_search(&sub, 4), Err(RecognizeError::CapExceeded { n: 5, cap: 4 }));
        assert_eq!(preimage_search(&sub, 17), Err(RecognizeError::InvalidCap { cap: 17, max: 16 }));
        assert_eq!(recognize(&sub, Property::Tree, 4), Err(RecognizeError::Undecidable { n: 5, cap: 4 }));
    }

    #[test]
    fn direct_rules_fire() {
        let card = Graph::cycle(3).unwrap().disjoint_union(&Graph::empty(2).unwrap()).unwrap();
        let sub = Subdeck::from_graphs(6, [&card]).unwrap();
        let v = recognize(&sub, Property::Forest, 11).unwrap();
        assert_eq!(v.decision, Decision::Fails);
        assert_eq!(v.method, Method::DirectRule(Rule::CycleOnCard));
        let v = recognize(&sub, Property::Bipartite, 11).unwrap();
        assert_eq!(v.method, Method::DirectRule(Rule::OddCycleOnCard));
    }

    #[test]
    fn visible_girth_on_cycle_plus_isolated() {
        // C6 ∪ 2K1: six P5 ∪ 2K1 cards and two C6 ∪ K1 cards; any 7 include a cycle
        let parent = Graph::cycle(6).unwrap().disjoint_union(&Graph::empty(2).unwrap()).unwrap();
        let cards: Vec<Graph> = (0..7).map(|v| parent.delete_vertex(v).unwrap()).collect();
        let sub = Subdeck::from_graphs(8, cards.iter()).unwrap();
        let v = recognize(&sub, Property::Girth, 11).unwrap();
        assert_eq!(v.decision, Decision::Value(Distance::Finite(6)));
        assert_eq!(v.method, Method::DirectRule(Rule::VisibleGirth));
    }

    #[test]
    fn tree_from_threshold_subdeck() {
        let tree = g(&[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)], 7);
        let deck = full_deck(&tree).unwrap();
        let cards: Vec<_> = deck.cards().expanded().take(7 / 2 + 2).cloned().collect();
        let sub = Subdeck::new(7, cards).unwrap();
        let v = recognize(&sub, Property::Tree, 11).unwrap();
        assert_eq!(v.method, Method::PreimageOracle);
        assert!(v.witnesses.contains(&canonical_form(&tree).unwrap()));
        assert_eq!(v.decision, Decision::Holds);
    }

    #[test]
    fn hidden_cycle_rule() {
        let c7 = Graph::cycle(7).unwrap();
        let sub = full_deck(&c7).unwrap().to_subdeck();
        assert_eq!(girth_direct(&sub).unwrap(), HiddenGirth { candidate: 7, certified: false });
        assert_eq!(girth_direct_certified(&sub, 11).unwrap(), HiddenGirth { candidate: 7, certified: true });

        let parent = Graph::cycle(6).unwrap().disjoint_union(&Graph::empty(5).unwrap()).unwrap();
        let white: Vec<Graph> = (0..6).map(|v| parent.delete_vertex(v).unwrap()).collect();
        let sub = Subdeck::from_graphs(11, white.iter()).unwrap();
        assert_eq!(hidden_cycle_length(&sub), Ok(6));
        assert_eq!(girth_direct(&sub), Err(RecognizeError::SubdeckTooSmall { size: 6, needed: 9 }));

        let star = Graph::star(4).unwrap();
        let sub = full_deck(&star).unwrap().to_subdeck();
        assert!(!girth_direct_certified(&sub, 11).unwrap().certified);
    }

    #[test]
    fn property_names() {
        assert_eq!("girth-value".parse::<Property>(), Ok(Property::Girth));
        assert_eq!("Bipartite".parse::<Property>(), Ok(Property::Bipartite));
        assert!("planar".parse::<Property>().is_err());
        assert_eq!(Decision::Value(Distance::Infinite).to_string(), "value(infinity)");
    }
}
