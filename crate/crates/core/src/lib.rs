//! Graph decks, common cards and reconstruction-style recognisers for small graphs.
//!
//! Everything here is `no_std` with `alloc`. A graph is a simple undirected
//! graph on vertices `0..n` with `n ≤ 256`; decks hold cards as canonical forms.
//!
//! ```
//! use deckbench_core::{common_card_count, family};
//!
//! let pair = family(1, 5).unwrap();
//! assert_eq!(common_card_count(&pair.forest, &pair.unicyclic).unwrap(), 6);
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod canon;
pub mod deck;
pub mod enumerate;
pub mod extremal;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod props;
pub mod recognize;

#[cfg(any(test, feature = "oracle"))]
pub mod oracle;

pub use canon::{are_isomorphic, automorphism_orbits, canonical_form, canonical_labeling, CanonicalForm};
pub use deck::{
    cards_with_component, cards_with_component_order, common_card_count, deck_contains, edge_count_from_deck,
    full_deck, Cards, Deck, DeckError, Subdeck,
};
pub use enumerate::{class_cap, enumerate_class, enumerate_class_forms, EnumerateError};
pub use extremal::{
    bound_by_name, max_common_cards, verify_bound, BoundRow, BoundSpec, BoundStatus, ExtremalRecord, PairRelation,
    PairScan, Partial, BOUNDS,
};
pub use families::{component_bound_extremal, family, star, star_minus_leaf, FamilyError, FamilyInstance};
pub use graph::{Graph, GraphError, MAX_ORDER};
pub use graph6::{decode_graph6, encode_graph6, Graph6Error};
pub use props::{classify, diameter, girth, is_bipartite, longest_path_order, Classification, Distance, GraphClass};
pub use recognize::{
    girth_direct, preimage_search, recognize, Decision, HiddenGirth, Method, Property, RecognizeError, Rule, Verdict,
};
