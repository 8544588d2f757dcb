//! Property tests for the proximity hit semantics.
//!
//! The brute-force oracle reimplements the hit definition directly: every
//! term occurrence is found by naive token-by-token comparison and every
//! (A, B) position pair is checked exhaustively. It never calls into the
//! implementation's position or distance machinery.

use clubgood_index::{build_index, document_hit, tokenize, CorpusDocument, ProximityQuery};
use proptest::prelude::*;

const VOCAB: &[&str] = &[
    "the", "of", "ports", "courts", "backlog", "trade", "flows", "policy", "capacity", "city",
    "globalization", "immigration", "free", "chaos", "crisis", "overwhelmed", "strain", "on",
];

fn doc_from_words(words: &[String]) -> CorpusDocument {
    CorpusDocument {
        doc_id: "prop".into(),
        year: 2020,
        source_tag: None,
        text: words.join(" "),
    }
}

fn words(min_len: usize, max_len: usize) -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(prop::sample::select(VOCAB).prop_map(str::to_owned), min_len..max_len)
}

/// Naive positions of one term: compare token runs directly.
fn oracle_positions(tokens: &[String], term: &[String]) -> Vec<usize> {
    let mut out = Vec::new();
    if term.is_empty() || tokens.len() < term.len() {
        return out;
    }
    for start in 0..=tokens.len() - term.len() {
        let mut matches = true;
        for (offset, word) in term.iter().enumerate() {
            if &tokens[start + offset] != word {
                matches = false;
                break;
            }
        }
        if matches {
            out.push(start);
        }
    }
    out
}

/// All-pairs proximity check over every group A and group B occurrence.
fn oracle_hit(tokens: &[String], query: &ProximityQuery) -> bool {
    let mut positions_a = Vec::new();
    for term in query.group_a() {
        positions_a.extend(oracle_positions(tokens, term));
    }
    let mut positions_b = Vec::new();
    for term in query.group_b() {
        positions_b.extend(oracle_positions(tokens, term));
    }
    for &pa in &positions_a {
        for &pb in &positions_b {
            if pa.abs_diff(pb) <= query.window() {
                return true;
            }
        }
    }
    false
}

fn headline_query(window: usize) -> ProximityQuery {
    ProximityQuery::new(
        &["globalization", "free trade", "immigration"],
        &["chaos", "crisis", "overwhelmed", "strain on"],
        window,
    )
    .unwrap()
}

proptest! {
    #[test]
    fn hit_matches_brute_force_oracle(words in words(1, 400), window in 1usize..80) {
        let query = headline_query(window);
        let doc = doc_from_words(&words);
        let tokens = tokenize(&doc.text);
        prop_assert_eq!(document_hit(&doc, &query), oracle_hit(&tokens, &query));
    }

    /// Widening the window never turns a hit into a miss.
    #[test]
    fn hit_is_monotone_in_window(words in words(1, 400), window in 1usize..60, extra in 1usize..40) {
        let doc = doc_from_words(&words);
        if document_hit(&doc, &headline_query(window)) {
            prop_assert!(document_hit(&doc, &headline_query(window + extra)));
        }
    }

    /// Adding terms to either group never turns a hit into a miss.
    #[test]
    fn hit_is_monotone_in_term_sets(words in words(1, 400), window in 1usize..60) {
        let narrow = ProximityQuery::new(&["globalization"], &["chaos"], window).unwrap();
        let doc = doc_from_words(&words);
        if document_hit(&doc, &narrow) {
            prop_assert!(document_hit(&doc, &headline_query(window)));
        }
    }

    /// Permuting terms within a group changes nothing.
    #[test]
    fn hit_ignores_term_order(words in words(1, 400), window in 1usize..60) {
        let shuffled = ProximityQuery::new(
            &["immigration", "globalization", "free trade"],
            &["strain on", "overwhelmed", "chaos", "crisis"],
            window,
        )
        .unwrap();
        let doc = doc_from_words(&words);
        prop_assert_eq!(document_hit(&doc, &headline_query(window)), document_hit(&doc, &shuffled));
    }

    /// Dropping one document lowers exactly its own year's count by at most
    /// one and leaves every other year untouched.
    #[test]
    fn removing_a_document_perturbs_one_year(
        docs in prop::collection::vec((words(1, 120), 2000i32..2005), 1..12),
        removed in 0usize..12,
    ) {
        let corpus: Vec<CorpusDocument> = docs
            .iter()
            .enumerate()
            .map(|(i, (words, year))| CorpusDocument {
                doc_id: format!("d{i}"),
                year: *year,
                source_tag: None,
                text: words.join(" "),
            })
            .collect();
        let removed = removed % corpus.len();
        let removed_year = corpus[removed].year;

        let query = headline_query(50);
        let full = build_index(&corpus, &query, None);
        let mut without: Vec<CorpusDocument> = corpus.clone();
        without.remove(removed);
        let reduced = build_index(&without, &query, None);

        for (year, count) in &full.counts {
            let after = reduced.counts.get(year).copied().unwrap_or(0);
            if *year == removed_year {
                prop_assert!(*count - after <= 1);
            } else {
                prop_assert_eq!(*count, after);
            }
            prop_assert!(full.counts[year] <= full.totals[year]);
        }
    }
}
