//! Acceptance checks, one printed line per criterion.
//!
//! A criterion listed in `EXPECTED_FAILURES` is reported as FAIL with its
//! explanation but does not fail the run; any other failure (or an expected
//! failure that unexpectedly passes) makes the process exit non-zero.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use deckbench::parallel::{max_common_cards, recognize};
use deckbench::report::{json_line, RecordJson};
use deckbench_core::families::{family_order, MIN_K};
use deckbench_core::oracle::{labeled_graphs, permutation_certificate};
use deckbench_core::recognize::{evaluate, preimage_search, DEFAULT_ORACLE_CAP};
use deckbench_core::{
    bound_by_name, canonical_form, cards_with_component, cards_with_component_order, common_card_count,
    component_bound_extremal, decode_graph6, encode_graph6, enumerate_class, family, full_deck, girth, verify_bound, Decision, Graph, GraphClass, PairRelation, Property, Subdeck,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria whose stated form is known to be false, with the reason.
const EXPECTED_FAILURES: &[(u32, &str)] = &[(
    3,
    "the floor form is false at n = 4 (K1,3 and C4 share three P3 cards) and n = 5; \
     the ceiling form, which is what the counting argument proves, holds",
)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "family pairs share exactly floor(n/2)+1 cards up to n = 201", family_tightness),
        (2, "graphs with two or more cycles share at most 2 cards with forests (n = 4..7)", multicyclic_vs_forest),
        (3, "forests and non-forests share at most floor(2n/3) cards (n = 3..7)", forest_vs_nonforest),
        (4, "component-count bound on connected graphs up to 8, sharp at (K1, 8) and (K2, 9)", component_bound),
        (5, "card edge total equals (n-2)e(G) for all graphs up to 7", kelly_identity),
        (6, "girth determined by any ceil(2n/3)+1 cards (n = 4..7)", girth_recognition),
        (7, "bipartite and non-bipartite graphs share at most floor(5n/6)+1 cards (n = 3..7)", bipartite_bound),
        (8, "tree/forest verdicts at n = 7 never wrong; small-order half-bound reports archived", recognizer_samples),
        (9, "canonical forms induce the brute-force isomorphism partition", canonical_oracle),
        (10, "graph6 round trip on all graphs up to order 8", graph6_round_trip),
    ];
    let mut unexpected = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        let o = check();
        let secs = start.elapsed().as_secs_f64();
        let expected_failure = EXPECTED_FAILURES.iter().find(|(i, _)| *i == id);
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("[{status}] {id:>2}. {name} ({secs:.1}s): {}", o.detail);
        match (o.pass, expected_failure) {
            (false, Some((_, why))) => println!("       known: {why}"),
            (false, None) => unexpected += 1,
            (true, Some(_)) => {
                println!("       expected this criterion to fail; investigate");
                unexpected += 1;
            }
            (true, None) => {}
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected acceptance result(s)");
        ExitCode::FAILURE
    }
}

fn family_tightness() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for id in 1..=3u8 {
        let mut k = MIN_K;
        while family_order(id, k).is_some_and(|n| n <= 201) {
            let f = family(id, k).expect("within order cap");
            let measured = common_card_count(&f.forest, &f.unicyclic).expect("equal orders");
            if measured != f.n / 2 + 1 || !f.invariants_hold() {
                bad.push(format!("family {id} k={k}: {measured}"));
            }
            checked += 1;
            k += 1;
        }
    }
    outcome(bad.is_empty(), format!("{checked} instances, mismatches: {bad:?}"))
}

fn class_bound(a: GraphClass, b: GraphClass, orders: std::ops::RangeInclusive<usize>, bound: fn(usize) -> usize) -> Outcome {
    let mut maxima = Vec::new();
    let mut pass = true;
    for n in orders {
        let r = max_common_cards(n, PairRelation::Classes(a, b)).expect("within caps");
        pass &= r.max_common <= bound(n);
        maxima.push(format!("n={n}: {} (bound {})", r.max_common, bound(n)));
    }
    outcome(pass, maxima.join(", "))
}

fn multicyclic_vs_forest() -> Outcome {
    class_bound(GraphClass::MultiCyclic, GraphClass::Forest, 4..=7, |_| 2)
}

fn forest_vs_nonforest() -> Outcome {
    let mut o = class_bound(GraphClass::Forest, GraphClass::NonForest, 3..=7, |n| 2 * n / 3);
    let ceiling = class_bound(GraphClass::Forest, GraphClass::NonForest, 3..=7, |n| (2 * n).div_ceil(3));
    o.detail.push_str(&format!("; ceiling form {}", if ceiling.pass { "holds" } else { "FAILS" }));
    o
}

fn component_bound() -> Outcome {
    let mut checked = 0u64;
    let mut violations = 0;
    for n in 3..=8 {
        let connected = enumerate_class(n, GraphClass::Connected).expect("within caps");
        for k in 1..=(n - 1) / 2 {
            let hs = enumerate_class(k, GraphClass::Connected).expect("within caps");
            for g in &connected {
                for h in &hs {
                    checked += 1;
                    violations += (cards_with_component(g, h).expect("hypotheses hold") > n / (k + 1)) as usize;
                }
                checked += 1;
                violations += (cards_with_component_order(g, k).expect("hypotheses hold") > n / (k + 1)) as usize;
            }
        }
    }
    let k1 = Graph::empty(1).expect("order 1");
    let k2 = Graph::complete(2).expect("order 2");
    let sharp_k1 = cards_with_component(&component_bound_extremal(&k1, 8).expect("feasible"), &k1);
    let sharp_k2 = cards_with_component(&component_bound_extremal(&k2, 9).expect("feasible"), &k2);
    let sharp = sharp_k1 == Ok(4) && sharp_k2 == Ok(3);
    outcome(
        violations == 0 && sharp,
        format!("{checked} (G, H) counts, {violations} over the bound; sharp constructions give {sharp_k1:?} and {sharp_k2:?}"),
    )
}

fn kelly_identity() -> Outcome {
    let mut checked = 0;
    let mut bad = 0;
    for n in 2..=7 {
        for g in enumerate_class(n, GraphClass::All).expect("within caps") {
            let total: usize = full_deck(&g).expect("small").cards().expanded().map(|c| c.edge_count()).sum();
            bad += (total != (n - 2) * g.edge_count()) as usize;
            checked += 1;
        }
    }
    outcome(bad == 0, format!("{checked} graphs, {bad} mismatches"))
}

fn girth_recognition() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in 4..=7usize {
        let size = (2 * n).div_ceil(3) + 1;
        let mut subdecks = 0;
        let mut disagreements = 0;
        for g in enumerate_class(n, GraphClass::All).expect("within caps") {
            let mut seen = std::collections::BTreeSet::new();
            for vs in combinations(n, size) {
                let cards: Vec<Graph> = vs.iter().map(|&v| g.delete_vertex(v).expect("in range")).collect();
                let sub = Subdeck::from_graphs(n, cards.iter()).expect("valid cards");
                if !seen.insert(sub.cards().expanded().cloned().collect::<Vec<_>>()) {
                    continue;
                }
                subdecks += 1;
                let pre = preimage_search(&sub, DEFAULT_ORACLE_CAP).expect("within cap");
                let girths: std::collections::BTreeSet<_> = pre.iter().map(|p| girth(&p.to_graph())).collect();
                disagreements += (girths.len() != 1) as usize;
            }
        }
        let r = max_common_cards(n, PairRelation::DifferentGirth).expect("within caps");
        let ok = disagreements == 0 && r.max_common < size;
        pass &= ok;
        parts.push(format!("n={n}: {subdecks} subdecks, {disagreements} ambiguous, max {}", r.max_common));
    }
    outcome(pass, parts.join("; "))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect()).collect()
}

fn bipartite_bound() -> Outcome {
    class_bound(GraphClass::Bipartite, GraphClass::NonBipartite, 3..=7, |n| 5 * n / 6 + 1)
}

fn recognizer_samples() -> Outcome {
    let n = 7;
    let size = n / 2 + 2;
    let mut pool: Vec<Graph> = enumerate_class(n, GraphClass::All).expect("within caps");
    pool.extend(enumerate_class(n, GraphClass::Forest).expect("within caps"));
    pool.extend(enumerate_class(n, GraphClass::Unicyclic).expect("within caps"));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut decided, mut ambiguous, mut wrong, mut false_ambiguity) = (0, 0, 0, 0);
    for i in 0..100 {
        let g = pool.choose(&mut rng).expect("nonempty");
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(&mut rng);
        let cards: Vec<Graph> = vs[..size].iter().map(|&v| g.delete_vertex(v).expect("in range")).collect();
        let sub = Subdeck::from_graphs(n, cards.iter()).expect("valid cards");
        let property = if i % 2 == 0 { Property::Tree } else { Property::Forest };
        let v = recognize(&sub, property, DEFAULT_ORACLE_CAP).expect("within cap");
        match v.decision {
            Decision::Ambiguous => {
                ambiguous += 1;
                // ambiguity must be real: the preimages disagree
                let answers: std::collections::BTreeSet<_> =
                    v.witnesses.iter().map(|w| evaluate(&w.to_graph(), property)).collect();
                false_ambiguity += (answers.len() < 2) as usize;
            }
            d => {
                decided += 1;
                wrong += (d != evaluate(g, property)) as usize;
            }
        }
    }
    let report = archive_half_bound_reports();
    outcome(
        wrong == 0 && false_ambiguity == 0 && report.is_ok(),
        format!(
            "{decided} decided, {ambiguous} ambiguous, {wrong} wrong, {false_ambiguity} spurious ambiguities; {}",
            report.unwrap_or_else(|e| e)
        ),
    )
}

/// Writes the half-bound reports; pass/fail of the rows is only reported.
fn archive_half_bound_reports() -> Result<String, String> {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("half_bound_reports.jsonl");
    let mut text = String::new();
    let mut summary = BTreeMap::new();
    for name in ["girth-half", "bipartite-half", "forest-nonforest-half"] {
        let spec = bound_by_name(name).expect("known bound");
        let rows = verify_bound(spec, 3..9, max_common_cards).map_err(|e| e.to_string())?;
        for row in &rows {
            text.push_str(&json_line(&RecordJson::from_row(spec, row)));
        }
        let above: Vec<usize> = rows.iter().filter(|r| !r.holds()).map(|r| r.record.n).collect();
        summary.insert(name, above);
    }
    fs::write(&path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    Ok(format!("reports in {} (orders above the half bound: {summary:?})", path.display()))
}

fn canonical_oracle() -> Outcome {
    let mut graphs: Vec<Graph> = (0..=6).flat_map(labeled_graphs).collect();
    let small = graphs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10_000 {
        let n = rng.gen_range(7..=8);
        let p = rng.gen_range(0.2..0.8);
        let mut g = Graph::empty(n).expect("small");
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(p) {
                    g.add_edge(i, j).expect("valid");
                }
            }
        }
        // a relabelled copy makes sure classes are not all singletons
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let h = g.permuted(&perm);
        graphs.push(g);
        graphs.push(h);
    }
    let mut ours = BTreeMap::new();
    let mut theirs = BTreeMap::new();
    let mut mismatches = 0;
    for (i, g) in graphs.iter().enumerate() {
        let a = *ours.entry(canonical_form(g).expect("small")).or_insert(i);
        let b = *theirs.entry(permutation_certificate(g)).or_insert(i);
        mismatches += (a != b) as usize;
    }
    outcome(
        mismatches == 0,
        format!(
            "{small} labelled graphs of order <= 6 and {} random graphs of order 7-8, {} classes, {mismatches} mismatches",
            graphs.len() - small,
            ours.len()
        ),
    )
}

fn graph6_round_trip() -> Outcome {
    let mut checked = 0u64;
    let mut bad = 0;
    for n in 0..=8 {
        for g in enumerate_class(n, GraphClass::All).expect("within caps") {
            checked += 1;
            bad += (decode_graph6(&encode_graph6(&g)).as_ref() != Ok(&g)) as usize;
        }
    }
    for n in 0..=7 {
        for g in labeled_graphs(n) {
            checked += 1;
            bad += (decode_graph6(&encode_graph6(&g)).as_ref() != Ok(&g)) as usize;
        }
    }
    outcome(bad == 0, format!("{checked} graphs, {bad} mismatches"))
}
