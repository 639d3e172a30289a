//! Data-parallel versions of the exhaustive searches.

use std::collections::BTreeSet;

use deckbench_core::extremal::DEFAULT_WITNESS_LIMIT;
use deckbench_core::recognize::{is_consistent, recognize_with, ExtensionPlan};
use deckbench_core::{
    CanonicalForm, EnumerateError, ExtremalRecord, PairRelation, PairScan, Partial, Property, RecognizeError, Subdeck,
    Verdict,
};
use rayon::prelude::*;

/// Left-hand graphs per work item.
const CHUNK: usize = 16;

/// [`deckbench_core::max_common_cards`] spread over the current rayon pool.
/// The result does not depend on the number of threads.
pub fn max_common_cards(n: usize, relation: PairRelation) -> Result<ExtremalRecord, EnumerateError> {
    max_common_cards_with_limit(n, relation, DEFAULT_WITNESS_LIMIT)
}

pub fn max_common_cards_with_limit(
    n: usize,
    relation: PairRelation,
    witness_limit: usize,
) -> Result<ExtremalRecord, EnumerateError> {
    let scan = PairScan::new(n, relation)?.with_witness_limit(witness_limit);
    let len = scan.left_len();
    let partial = (0..len.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| scan.scan(c * CHUNK..((c + 1) * CHUNK).min(len)))
        .reduce(Partial::default, |a, b| a.merge(b, witness_limit));
    Ok(scan.finish(partial))
}

/// [`deckbench_core::preimage_search`] over extension neighbourhoods in parallel.
pub fn preimage_search(sub: &Subdeck, cap: usize) -> Result<Vec<CanonicalForm>, RecognizeError> {
    let plan = ExtensionPlan::new(sub, cap)?;
    let candidates: BTreeSet<CanonicalForm> = plan.masks().par_iter().map(|&m| plan.extend(m)).collect();
    let checked: Vec<(CanonicalForm, bool)> = candidates
        .into_par_iter()
        .map(|c| is_consistent(&c, sub).map(|ok| (c, ok)))
        .collect::<Result<_, _>>()?;
    Ok(checked.into_iter().filter(|(_, ok)| *ok).map(|(c, _)| c).collect())
}

pub fn recognize(sub: &Subdeck, property: Property, cap: usize) -> Result<Verdict, RecognizeError> {
    recognize_with(sub, property, cap, preimage_search)
}
