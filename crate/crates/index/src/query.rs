//! Tokenization, term matching, and the proximity hit test.

use serde::Deserialize;
use thiserror::Error;

use crate::corpus::CorpusDocument;

/// Default token window, matching the usual "within 50 words" connector.
pub const DEFAULT_WINDOW: usize = 50;

/// Lowercase, then split on every maximal run of non-alphanumeric
/// characters. Hyphens and apostrophes separate tokens, so "free-trade"
/// yields the same tokens as "free trade".
pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|token| !token.is_empty())
        .map(str::to_owned)
        .collect()
}

/// 0-based start positions of every (possibly overlapping) occurrence of
/// `term` as a consecutive token run.
pub fn find_term_positions(tokens: &[String], term: &[String]) -> Vec<usize> {
    if term.is_empty() || term.len() > tokens.len() {
        return Vec::new();
    }
    (0..=tokens.len() - term.len())
        .filter(|&start| tokens[start..start + term.len()] == *term)
        .collect()
}

/// Two term groups and a token window. A term is one or more tokens
/// (phrases allowed); terms are stored pre-tokenized so documents and
/// queries normalize identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProximityQuery {
    group_a: Vec<Vec<String>>,
    group_b: Vec<Vec<String>>,
    window: usize,
}

#[derive(Debug, Error)]
pub enum QueryError {
    #[error("invalid query JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("term group {0:?} is empty")]
    EmptyGroup(&'static str),
    #[error("term {0:?} contains no tokens")]
    EmptyTerm(String),
    #[error("window must be at least 1")]
    ZeroWindow,
}

impl ProximityQuery {
    /// Build from raw phrase strings; each phrase is tokenized and must
    /// yield at least one token.
    pub fn new<S: AsRef<str>>(
        group_a: &[S],
        group_b: &[S],
        window: usize,
    ) -> Result<Self, QueryError> {
        if window == 0 {
            return Err(QueryError::ZeroWindow);
        }
        Ok(Self {
            group_a: parse_group(group_a, "group_a")?,
            group_b: parse_group(group_b, "group_b")?,
            window,
        })
    }

    pub fn group_a(&self) -> &[Vec<String>] {
        &self.group_a
    }

    pub fn group_b(&self) -> &[Vec<String>] {
        &self.group_b
    }

    pub fn window(&self) -> usize {
        self.window
    }
}

fn parse_group<S: AsRef<str>>(
    phrases: &[S],
    which: &'static str,
) -> Result<Vec<Vec<String>>, QueryError> {
    if phrases.is_empty() {
        return Err(QueryError::EmptyGroup(which));
    }
    phrases
        .iter()
        .map(|phrase| {
            let term = tokenize(phrase.as_ref());
            if term.is_empty() {
                Err(QueryError::EmptyTerm(phrase.as_ref().to_owned()))
            } else {
                Ok(term)
            }
        })
        .collect()
}

#[derive(Deserialize)]
struct QueryFile {
    group_a: Vec<String>,
    group_b: Vec<String>,
    #[serde(default = "default_window")]
    window: usize,
}

fn default_window() -> usize {
    DEFAULT_WINDOW
}

/// Parse a JSON query specification: `group_a` and `group_b` as arrays of
/// strings (multi-word entries are phrases) plus an optional `window`.
pub fn read_query(json: &str) -> Result<ProximityQuery, QueryError> {
    let file: QueryFile = serde_json::from_str(json)?;
    ProximityQuery::new(&file.group_a, &file.group_b, file.window)
}

/// True iff some group A term and some group B term occur with first-token
/// positions at most `window` apart (boundary inclusive).
pub fn document_hit(doc: &CorpusDocument, query: &ProximityQuery) -> bool {
    hit_in_tokens(&tokenize(&doc.text), query)
}

/// Number of group A occurrences that have a group B occurrence within the
/// window; the per-occurrence variant of [`document_hit`].
pub fn document_hit_count(doc: &CorpusDocument, query: &ProximityQuery) -> usize {
    let tokens = tokenize(&doc.text);
    let positions_a = positions_of_any(&tokens, query.group_a());
    if positions_a.is_empty() {
        return 0;
    }
    let positions_b = positions_of_any(&tokens, query.group_b());
    if positions_b.is_empty() {
        return 0;
    }
    positions_a
        .iter()
        .filter(|&&pa| nearest_distance(pa, &positions_b) <= query.window())
        .count()
}

pub(crate) fn hit_in_tokens(tokens: &[String], query: &ProximityQuery) -> bool {
    let positions_a = positions_of_any(tokens, query.group_a());
    if positions_a.is_empty() {
        return false;
    }
    let positions_b = positions_of_any(tokens, query.group_b());
    if positions_b.is_empty() {
        return false;
    }
    min_pair_distance(&positions_a, &positions_b) <= query.window()
}

/// Sorted, deduplicated union of the start positions of every term in the group.
fn positions_of_any(tokens: &[String], terms: &[Vec<String>]) -> Vec<usize> {
    let mut positions: Vec<usize> = terms
        .iter()
        .flat_map(|term| find_term_positions(tokens, term))
        .collect();
    positions.sort_unstable();
    positions.dedup();
    positions
}

/// Minimum |a − b| over two sorted position lists, by a linear merge.
fn min_pair_distance(sorted_a: &[usize], sorted_b: &[usize]) -> usize {
    let mut best = usize::MAX;
    let mut i = 0;
    let mut j = 0;
    while i < sorted_a.len() && j < sorted_b.len() {
        let (a, b) = (sorted_a[i], sorted_b[j]);
        best = best.min(a.abs_diff(b));
        if a <= b {
            i += 1;
        } else {
            j += 1;
        }
    }
    best
}

fn nearest_distance(position: usize, sorted: &[usize]) -> usize {
    let idx = sorted.partition_point(|&p| p < position);
    let mut best = usize::MAX;
    if idx < sorted.len() {
        best = best.min(sorted[idx].abs_diff(position));
    }
    if idx > 0 {
        best = best.min(sorted[idx - 1].abs_diff(position));
    }
    best
}
