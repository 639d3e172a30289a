//! Decks, subdecks and common cards.
//!
//! A card is `G - v` up to isomorphism, so decks only ever hold canonical forms
//! with multiplicities.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeckError {
    Graph(GraphError),
    /// A card's order is not one less than the parent order.
    CardOrder { expected: usize, found: usize },
    /// A complete deck must have exactly `n` cards.
    CardCount { expected: usize, found: usize },
    /// More cards than a graph of the claimed order has.
    TooManyCards { parent_order: usize, found: usize },
    ParentOrderMismatch { deck: usize, subdeck: usize },
    /// The card edge total is not divisible by `n - 2`.
    InconsistentDeck { edge_total: usize, divisor: usize },
    DeckTooSmall { order: usize },
    /// A hypothesis of the component-count bound does not hold.
    Hypothesis(&'static str),
}

impl fmt::Display for DeckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeckError::Graph(e) => e.fmt(f),
            DeckError::CardOrder { expected, found } => {
                write!(f, "card of order {found} where order {expected} was expected")
            }
            DeckError::CardCount { expected, found } => {
                write!(f, "a complete deck needs {expected} cards, found {found}")
            }
            DeckError::TooManyCards { parent_order, found } => {
                write!(f, "{found} cards exceed the {parent_order} cards of an order-{parent_order} graph")
            }
            DeckError::ParentOrderMismatch { deck, subdeck } => {
                write!(f, "deck is for order {deck} but subdeck claims order {subdeck}")
            }
            DeckError::InconsistentDeck { edge_total, divisor } => {
                write!(f, "inconsistent deck: card edge total {edge_total} is not divisible by {divisor}")
            }
            DeckError::DeckTooSmall { order } => {
                write!(f, "edge counting needs parent order at least 3, got {order}")
            }
            DeckError::Hypothesis(what) => write!(f, "precondition violated: {what}"),
        }
    }
}

impl core::error::Error for DeckError {}

impl From<GraphError> for DeckError {
    fn from(e: GraphError) -> Self {
        DeckError::Graph(e)
    }
}

/// A multiset of cards sharing one order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cards(BTreeMap<CanonicalForm, usize>);

impl Cards {
    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn multiplicity(&self, card: &CanonicalForm) -> usize {
        self.0.get(card).copied().unwrap_or(0)
    }

    /// Distinct cards in ascending certificate order with their multiplicities.
    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalForm, usize)> {
        self.0.iter().map(|(c, &m)| (c, m))
    }

    /// Every card, repeated by multiplicity, in ascending certificate order.
    pub fn expanded(&self) -> impl Iterator<Item = &CanonicalForm> {
        self.0.iter().flat_map(|(c, &m)| core::iter::repeat_n(c, m))
    }

    pub fn distinct(&self) -> usize {
        self.0.len()
    }

    pub fn first(&self) -> Option<&CanonicalForm> {
        self.0.keys().next()
    }

    fn insert(&mut self, card: CanonicalForm) {
        *self.0.entry(card).or_insert(0) += 1;
    }

    /// `Σ_C min(self(C), other(C))`.
    pub fn intersection_size(&self, other: &Cards) -> usize {
        let (small, large) = if self.0.len() <= other.0.len() { (self, other) } else { (other, self) };
        small.0.iter().map(|(c, &m)| m.min(large.multiplicity(c))).sum()
    }

    pub fn is_submultiset_of(&self, other: &Cards) -> bool {
        self.0.iter().all(|(c, &m)| m <= other.multiplicity(c))
    }
}

fn collect_cards(parent_order: usize, cards: impl IntoIterator<Item = CanonicalForm>) -> Result<Cards, DeckError> {
    let mut out = Cards::default();
    for card in cards {
        if card.order() + 1 != parent_order {
            return Err(DeckError::CardOrder { expected: parent_order.saturating_sub(1), found: card.order() });
        }
        out.insert(card);
    }
    Ok(out)
}

/// The full deck of an order-`n` graph: exactly `n` cards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deck {
    parent_order: usize,
    cards: Cards,
}

impl Deck {
    /// Assembles a deck from cards, checking there are exactly `parent_order` of them.
    pub fn from_cards(parent_order: usize, cards: impl IntoIterator<Item = CanonicalForm>) -> Result<Self, DeckError> {
        let cards = collect_cards(parent_order, cards)?;
        if cards.total() != parent_order {
            return Err(DeckError::CardCount { expected: parent_order, found: cards.total() });
        }
        Ok(Deck { parent_order, cards })
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn cards(&self) -> &Cards {
        &self.cards
    }

    /// The whole deck viewed as a subdeck.
    pub fn to_subdeck(&self) -> Subdeck {
        Subdeck { parent_order: self.parent_order, cards: self.cards.clone() }
    }
}

/// Some of the cards of an order-`parent_order` graph. The parent order is
/// supplied by the caller, never inferred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdeck {
    parent_order: usize,
    cards: Cards,
}

impl Subdeck {
    pub fn new(parent_order: usize, cards: impl IntoIterator<Item = CanonicalForm>) -> Result<Self, DeckError> {
        let cards = collect_cards(parent_order, cards)?;
        if cards.total() > parent_order {
            return Err(DeckError::TooManyCards { parent_order, found: cards.total() });
        }
        Ok(Subdeck { parent_order, cards })
    }

    /// Canonicalises labelled cards before collecting them.
    pub fn from_graphs<'a>(parent_order: usize, cards: impl IntoIterator<Item = &'a Graph>) -> Result<Self, DeckError> {
        let forms = cards.into_iter().map(canonical_form).collect::<Result<Vec<_>, _>>()?;
        Subdeck::new(parent_order, forms)
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn cards(&self) -> &Cards {
        &self.cards
    }

    pub fn len(&self) -> usize {
        self.cards.total()
    }

    pub fn is_empty(&self) -> bool {
        self.cards.total() == 0
    }
}

/// The multiset `{G - v}` of canonical cards.
pub fn full_deck(g: &Graph) -> Result<Deck, DeckError> {
    let n = g.order();
    let mut cards = Cards::default();
    for v in 0..n {
        cards.insert(canonical_form(&g.delete_vertex(v)?)?);
    }
    Ok(Deck { parent_order: n, cards })
}

/// The largest number of cards two graphs of the same order can share.
pub fn common_card_count(g: &Graph, h: &Graph) -> Result<usize, DeckError> {
    if g.order() != h.order() {
        return Err(DeckError::Graph(GraphError::OrderMismatch { left: g.order(), right: h.order() }));
    }
    Ok(full_deck(g)?.cards.intersection_size(&full_deck(h)?.cards))
}

pub fn common_cards_between(a: &Deck, b: &Deck) -> Result<usize, DeckError> {
    if a.parent_order != b.parent_order {
        return Err(DeckError::Graph(GraphError::OrderMismatch { left: a.parent_order, right: b.parent_order }));
    }
    Ok(a.cards.intersection_size(&b.cards))
}

/// True when every card of `sub` occurs in `full` at least as often.
pub fn deck_contains(full: &Deck, sub: &Subdeck) -> Result<bool, DeckError> {
    if full.parent_order != sub.parent_order {
        return Err(DeckError::ParentOrderMismatch { deck: full.parent_order, subdeck: sub.parent_order });
    }
    Ok(sub.cards.is_submultiset_of(&full.cards))
}

/// Recovers `e(G)` from the deck: each edge survives on exactly `n - 2` cards.
pub fn edge_count_from_deck(deck: &Deck) -> Result<usize, DeckError> {
    let n = deck.parent_order;
    if n < 3 {
        return Err(DeckError::DeckTooSmall { order: n });
    }
    let total: usize = deck.cards.iter().map(|(c, m)| c.edge_count() * m).sum();
    if !total.is_multiple_of(n - 2) {
        return Err(DeckError::InconsistentDeck { edge_total: total, divisor: n - 2 });
    }
    Ok(total / (n - 2))
}

/// Number of vertices `v` for which `G - v` has a connected component isomorphic to `h`.
///
/// Requires `G` and `h` connected with `2·v(h) < v(G)`; the count is then at most
/// `⌊v(G) / (v(h) + 1)⌋`.
pub fn cards_with_component(g: &Graph, h: &Graph) -> Result<usize, DeckError> {
    if !g.is_connected() || g.order() == 0 {
        return Err(DeckError::Hypothesis("G must be connected"));
    }
    if !h.is_connected() || h.order() == 0 {
        return Err(DeckError::Hypothesis("H must be connected"));
    }
    if 2 * h.order() >= g.order() {
        return Err(DeckError::Hypothesis("v(H) must be less than v(G)/2"));
    }
    let target = canonical_form(h)?;
    let k = h.order();
    let mut count = 0;
    for v in 0..g.order() {
        let card = g.delete_vertex(v)?;
        let mut found = false;
        for comp in card.components() {
            if comp.len() == k && canonical_form(&card.induced(&comp))? == target {
                found = true;
                break;
            }
        }
        count += found as usize;
    }
    Ok(count)
}

/// Number of vertices `v` for which `G - v` has a component of order exactly `k`.
/// Requires `G` connected and `1 ≤ k < v(G)/2`; at most `⌊v(G) / (k + 1)⌋`.
pub fn cards_with_component_order(g: &Graph, k: usize) -> Result<usize, DeckError> {
    if !g.is_connected() || g.order() == 0 {
        return Err(DeckError::Hypothesis("G must be connected"));
    }
    if k == 0 || 2 * k >= g.order() {
        return Err(DeckError::Hypothesis("component order k must satisfy 1 <= k < v(G)/2"));
    }
    let mut count = 0;
    for v in 0..g.order() {
        let card = g.delete_vertex(v)?;
        count += card.components().iter().any(|c| c.len() == k) as usize;
    }
    Ok(count)
}
