//! Proximity co-occurrence over dated text corpora.
//!
//! A document "hits" a query when any term from group A occurs within a
//! fixed token window of any term from group B. Counting hit documents per
//! year yields an index series; comparing its growth against a control
//! topic's series gives a placebo check.
//!
//! Corpora are newline-delimited JSON (`doc_id`, `year`, `text`, optional
//! `source_tag`), queries are JSON (`group_a`, `group_b`, `window`), and
//! series are emitted as `year,count,total` CSV.

pub mod corpus;
pub mod query;
pub mod series;

pub use corpus::{read_corpus, CorpusDocument, CorpusError};
pub use query::{
    document_hit, document_hit_count, find_term_positions, read_query, tokenize, ProximityQuery,
    QueryError,
};
pub use series::{
    build_index, build_index_counting, growth_ratio, placebo_compare, read_series_csv,
    write_series_csv, CountMode, IndexSeries, PlaceboComparison, SeriesError,
};
