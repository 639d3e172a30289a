use std::collections::BTreeSet;

use deckbench_core::recognize::{
    direct_rule, evaluate, girth_direct_certified, hidden_cycle_threshold, DEFAULT_ORACLE_CAP,
};
use deckbench_core::{
    canonical_form, classify, enumerate_class, full_deck, girth, preimage_search, recognize, CanonicalForm, Decision,
    Graph, GraphClass, Property, Subdeck,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn subdeck(g: &Graph, vertices: &[usize]) -> Subdeck {
    let cards: Vec<Graph> = vertices.iter().map(|&v| g.delete_vertex(v).unwrap()).collect();
    Subdeck::from_graphs(g.order(), cards.iter()).unwrap()
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..1 << n).map(move |m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
}

#[test]
fn direct_rules_are_sound_up_to_six() {
    for n in 3..=6 {
        for g in enumerate_class(n, GraphClass::All).unwrap() {
            for vs in subsets(n) {
                let sub = subdeck(&g, &vs);
                for p in Property::ALL {
                    if let Some((decision, _)) = direct_rule(&sub, p) {
                        assert_eq!(decision, evaluate(&g, p), "{g:?} {vs:?} {p}");
                    }
                }
            }
        }
    }
}

#[test]
fn direct_rules_are_sound_on_sampled_order_eight() {
    let graphs = enumerate_class(8, GraphClass::All).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..3000 {
        let g = graphs.choose(&mut rng).unwrap();
        let mut vs: Vec<usize> = (0..8).collect();
        vs.shuffle(&mut rng);
        vs.truncate(rand::Rng::gen_range(&mut rng, 1..=8));
        let sub = subdeck(g, &vs);
        for p in Property::ALL {
            if let Some((decision, _)) = direct_rule(&sub, p) {
                assert_eq!(decision, evaluate(g, p));
            }
        }
    }
}

#[test]
fn full_decks_have_a_single_preimage() {
    for n in 1..=7 {
        let forms: Vec<CanonicalForm> = enumerate_class(n, GraphClass::All)
            .unwrap()
            .iter()
            .map(|g| canonical_form(g).unwrap())
            .collect();
        for f in &forms {
            let sub = full_deck(&f.to_graph()).unwrap().to_subdeck();
            let found = preimage_search(&sub, DEFAULT_ORACLE_CAP).unwrap();
            // K2 and 2K1 share a deck; from order 3 on every small graph is reconstructible
            if n < 3 {
                assert!(found.contains(f));
            } else {
                assert_eq!(found, vec![f.clone()], "n = {n}");
            }
        }
    }
}

#[test]
fn preimages_match_brute_force_on_single_cards() {
    // every graph whose deck contains card C, for each C on 4 vertices
    let parents: Vec<Graph> = enumerate_class(5, GraphClass::All).unwrap();
    for card in enumerate_class(4, GraphClass::All).unwrap() {
        let c = canonical_form(&card).unwrap();
        let sub = Subdeck::new(5, [c.clone()]).unwrap();
        let brute: BTreeSet<CanonicalForm> = parents
            .iter()
            .filter(|p| full_deck(p).unwrap().cards().multiplicity(&c) > 0)
            .map(|p| canonical_form(p).unwrap())
            .collect();
        assert_eq!(preimage_search(&sub, 11).unwrap(), brute.into_iter().collect::<Vec<_>>());
    }
}

#[test]
fn verdicts_never_contradict_the_parent() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let graphs = enumerate_class(7, GraphClass::All).unwrap();
    for _ in 0..300 {
        let g = graphs.choose(&mut rng).unwrap();
        let mut vs: Vec<usize> = (0..7).collect();
        vs.shuffle(&mut rng);
        vs.truncate(rand::Rng::gen_range(&mut rng, 1..=7));
        let sub = subdeck(g, &vs);
        for p in Property::ALL {
            let v = recognize(&sub, p, DEFAULT_ORACLE_CAP).unwrap();
            if v.decision != Decision::Ambiguous {
                assert_eq!(v.decision, evaluate(g, p), "{g:?} {vs:?} {p}");
            }
            if v.witness_count > 0 {
                assert!(v.witness_count <= 50 || v.witnesses.len() == 50);
            }
        }
    }
}

#[test]
fn girth_is_recognised_from_threshold_subdecks_up_to_six() {
    for n in 4..=6 {
        let t = hidden_cycle_threshold(n);
        for g in enumerate_class(n, GraphClass::All).unwrap() {
            for vs in subsets(n).filter(|s| s.len() == t) {
                let v = recognize(&subdeck(&g, &vs), Property::Girth, 11).unwrap();
                assert_eq!(v.decision, Decision::Value(girth(&g)), "{g:?} {vs:?}");
            }
        }
    }
}

#[test]
fn certified_hidden_girth_is_the_girth() {
    for n in 4..=7 {
        let t = hidden_cycle_threshold(n);
        for g in enumerate_class(n, GraphClass::All).unwrap() {
            if classify(&g).forest() {
                continue;
            }
            for vs in subsets(n).filter(|s| s.len() == t) {
                let sub = subdeck(&g, &vs);
                if let Ok(h) = girth_direct_certified(&sub, 11) {
                    assert!(h.certified);
                    assert_eq!(Some(h.candidate), girth(&g).finite(), "{g:?} {vs:?}");
                }
            }
        }
    }
}
