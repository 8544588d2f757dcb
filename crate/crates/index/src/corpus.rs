//! Corpus documents and newline-delimited JSON ingestion.

use std::collections::HashSet;
use std::io::BufRead;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Years outside this range are treated as data errors at ingestion.
pub const YEAR_RANGE: std::ops::RangeInclusive<i32> = 1900..=2100;

/// One dated document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusDocument {
    pub doc_id: String,
    pub year: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_tag: Option<String>,
    pub text: String,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("failed to read corpus")]
    Io(#[from] std::io::Error),
    #[error("line {line}: invalid document JSON: {source}")]
    Parse {
        line: usize,
        source: serde_json::Error,
    },
    #[error("line {line}: document {doc_id:?} has year {year} outside {}..={}", YEAR_RANGE.start(), YEAR_RANGE.end())]
    YearOutOfRange {
        line: usize,
        doc_id: String,
        year: i32,
    },
    #[error("line {line}: duplicate doc_id {doc_id:?}")]
    DuplicateDocId { line: usize, doc_id: String },
}

/// Read a newline-delimited JSON corpus: one document object per line,
/// blank lines ignored. Rejects duplicate ids and out-of-range years.
pub fn read_corpus<R: BufRead>(reader: R) -> Result<Vec<CorpusDocument>, CorpusError> {
    let mut documents = Vec::new();
    let mut seen_ids = HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let doc: CorpusDocument =
            serde_json::from_str(&line).map_err(|source| CorpusError::Parse {
                line: line_no,
                source,
            })?;
        if !YEAR_RANGE.contains(&doc.year) {
            return Err(CorpusError::YearOutOfRange {
                line: line_no,
                doc_id: doc.doc_id,
                year: doc.year,
            });
        }
        if !seen_ids.insert(doc.doc_id.clone()) {
            return Err(CorpusError::DuplicateDocId {
                line: line_no,
                doc_id: doc.doc_id,
            });
        }
        documents.push(doc);
    }
    Ok(documents)
}
