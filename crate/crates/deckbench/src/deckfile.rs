//! Deck files: a header line `n=<parent order>` followed by one graph6 line
//! per card, a card repeated once per copy.

use std::fmt::Write as _;

use deckbench_core::{canonical_form, decode_graph6, Cards, DeckError, Graph6Error, Subdeck};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeckFileError {
    #[error("line 1: expected header `n=<order>`")]
    MissingHeader,
    #[error("line 1: bad parent order {0:?}")]
    BadOrder(String),
    #[error("line {line}: {source}")]
    Graph6 { line: usize, source: Graph6Error },
    #[error("line {line}: {source}")]
    Card { line: usize, source: DeckError },
    #[error(transparent)]
    Deck(DeckError),
}

/// Renders cards in certificate order, one line per copy.
pub fn write_deck(parent_order: usize, cards: &Cards) -> String {
    let mut out = format!("n={parent_order}\n");
    for card in cards.expanded() {
        let _ = writeln!(out, "{card}");
    }
    out
}

/// Parses a deck file into a subdeck. Cards need not be canonical; blank
/// lines are skipped.
pub fn parse_deck(text: &str) -> Result<Subdeck, DeckFileError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(DeckFileError::MissingHeader)?;
    let order = header.trim().strip_prefix("n=").ok_or(DeckFileError::MissingHeader)?;
    let n: usize = order.trim().parse().map_err(|_| DeckFileError::BadOrder(order.to_string()))?;
    let mut cards = Vec::new();
    for (i, line) in lines {
        let g = decode_graph6(line.trim()).map_err(|source| DeckFileError::Graph6 { line: i + 1, source })?;
        let form = canonical_form(&g).map_err(|e| DeckFileError::Card { line: i + 1, source: e.into() })?;
        if form.order() + 1 != n {
            let source = DeckError::CardOrder { expected: n.saturating_sub(1), found: form.order() };
            return Err(DeckFileError::Card { line: i + 1, source });
        }
        cards.push(form);
    }
    Subdeck::new(n, cards).map_err(DeckFileError::Deck)
}

#[cfg(test)]
mod tests {
    use super::*;
    use deckbench_core::{full_deck, Graph};

    #[test]
    fn triangle_deck() {
        let deck = full_deck(&Graph::complete(3).unwrap()).unwrap();
        assert_eq!(write_deck(3, deck.cards()), "n=3\nA_\nA_\nA_\n");
    }

    #[test]
    fn round_trip() {
        let g = Graph::path(5).unwrap();
        let deck = full_deck(&g).unwrap();
        let text = write_deck(5, deck.cards());
        assert_eq!(parse_deck(&text).unwrap(), deck.to_subdeck());
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(parse_deck(""), Err(DeckFileError::MissingHeader));
        assert_eq!(parse_deck("n=x\n"), Err(DeckFileError::BadOrder("x".into())));
        assert!(matches!(parse_deck("n=3\nA_\nB!\n"), Err(DeckFileError::Graph6 { line: 3, .. })));
        assert!(matches!(parse_deck("n=4\nA_\n"), Err(DeckFileError::Card { line: 2, .. })));
        assert!(matches!(parse_deck("n=2\n@\n@\n@\n"), Err(DeckFileError::Deck(DeckError::TooManyCards { .. }))));
    }
}
