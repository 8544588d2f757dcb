//! Yearly index series: building, growth ratios, placebo comparison, CSV.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::CorpusDocument;
use crate::query::{document_hit_count, hit_in_tokens, tokenize, ProximityQuery};

/// Per-year hit and scan counts. Keys are years; `counts[y] ≤ totals[y]`
/// for every year present, and both maps carry the same key set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSeries {
    pub label: String,
    pub counts: BTreeMap<i32, u64>,
    pub totals: BTreeMap<i32, u64>,
}

/// What a document contributes to its year's count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    /// 1 if the document hits, else 0 (the headline statistic).
    Documents,
    /// Number of group A occurrences with a group B term in the window.
    Occurrences,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("year {0} not present in series")]
    MissingYear(i32),
    #[error("count in baseline year {0} is zero; growth ratio undefined")]
    ZeroBaseline(i32),
    #[error("control series growth ratio is zero; divergence undefined")]
    ZeroControlRatio,
    #[error("line {line}: malformed series CSV: {message}")]
    MalformedCsv { line: usize, message: String },
}

/// Count hit documents per year, scanning documents in parallel.
///
/// With a `source_filter`, only documents carrying that tag are scanned
/// (and only they enter the totals). Years with scanned documents but no
/// hits appear with a zero count.
pub fn build_index(
    corpus: &[CorpusDocument],
    query: &ProximityQuery,
    source_filter: Option<&str>,
) -> IndexSeries {
    build_index_counting(corpus, query, source_filter, CountMode::Documents)
}

/// [`build_index`] with an explicit counting mode.
pub fn build_index_counting(
    corpus: &[CorpusDocument],
    query: &ProximityQuery,
    source_filter: Option<&str>,
    mode: CountMode,
) -> IndexSeries {
    let (counts, totals) = corpus
        .par_iter()
        .filter(|doc| match source_filter {
            Some(tag) => doc.source_tag.as_deref() == Some(tag),
            None => true,
        })
        .map(|doc| {
            let contribution = match mode {
                CountMode::Documents => u64::from(hit_in_tokens(&tokenize(&doc.text), query)),
                CountMode::Occurrences => document_hit_count(doc, query) as u64,
            };
            (doc.year, contribution)
        })
        .fold(
            || (BTreeMap::new(), BTreeMap::new()),
            |(mut counts, mut totals), (year, contribution)| {
                *counts.entry(year).or_insert(0u64) += contribution;
                *totals.entry(year).or_insert(0u64) += 1;
                (counts, totals)
            },
        )
        .reduce(
            || (BTreeMap::new(), BTreeMap::new()),
            |(mut counts_l, mut totals_l), (counts_r, totals_r)| {
                for (year, n) in counts_r {
                    *counts_l.entry(year).or_insert(0) += n;
                }
                for (year, n) in totals_r {
                    *totals_l.entry(year).or_insert(0) += n;
                }
                (counts_l, totals_l)
            },
        );
    IndexSeries {
        label: source_filter.unwrap_or("all").to_owned(),
        counts,
        totals,
    }
}

/// `counts[year_to] / counts[year_from]`.
pub fn growth_ratio(series: &IndexSeries, year_from: i32, year_to: i32) -> Result<f64, SeriesError> {
    let from = *series
        .counts
        .get(&year_from)
        .ok_or(SeriesError::MissingYear(year_from))?;
    let to = *series
        .counts
        .get(&year_to)
        .ok_or(SeriesError::MissingYear(year_to))?;
    if from == 0 {
        return Err(SeriesError::ZeroBaseline(year_from));
    }
    Ok(to as f64 / from as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaceboComparison {
    pub treatment_ratio: f64,
    pub control_ratio: f64,
    /// `treatment_ratio / control_ratio`.
    pub divergence: f64,
}

/// Growth of the treatment series relative to a control topic over the
/// same span.
pub fn placebo_compare(
    treatment: &IndexSeries,
    control: &IndexSeries,
    year_from: i32,
    year_to: i32,
) -> Result<PlaceboComparison, SeriesError> {
    let treatment_ratio = growth_ratio(treatment, year_from, year_to)?;
    let control_ratio = growth_ratio(control, year_from, year_to)?;
    if control_ratio == 0.0 {
        return Err(SeriesError::ZeroControlRatio);
    }
    Ok(PlaceboComparison {
        treatment_ratio,
        control_ratio,
        divergence: treatment_ratio / control_ratio,
    })
}

/// Write `year,count,total` rows, ascending by year.
pub fn write_series_csv<W: Write>(series: &IndexSeries, mut writer: W) -> io::Result<()> {
    writeln!(writer, "year,count,total")?;
    let years: std::collections::BTreeSet<i32> = series
        .counts
        .keys()
        .chain(series.totals.keys())
        .copied()
        .collect();
    for year in years {
        let count = series.counts.get(&year).copied().unwrap_or(0);
        let total = series.totals.get(&year).copied().unwrap_or(0);
        writeln!(writer, "{year},{count},{total}")?;
    }
    Ok(())
}

/// Read a series back from its CSV form.
pub fn read_series_csv<R: BufRead>(reader: R, label: &str) -> Result<IndexSeries, SeriesError> {
    let mut counts = BTreeMap::new();
    let mut totals = BTreeMap::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| SeriesError::MalformedCsv {
            line: line_no,
            message: e.to_string(),
        })?;
        if line_no == 1 {
            if line.trim() != "year,count,total" {
                return Err(SeriesError::MalformedCsv {
                    line: line_no,
                    message: format!("expected header \"year,count,total\", got {line:?}"),
                });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(SeriesError::MalformedCsv {
                line: line_no,
                message: format!("expected 3 fields, got {}", fields.len()),
            });
        }
        let parse = |field: &str, name: &str| {
            field.trim().parse::<i64>().map_err(|e| SeriesError::MalformedCsv {
                line: line_no,
                message: format!("bad {name} {field:?}: {e}"),
            })
        };
        let year = parse(fields[0], "year")? as i32;
        let count = parse(fields[1], "count")? as u64;
        let total = parse(fields[2], "total")? as u64;
        counts.insert(year, count);
        totals.insert(year, total);
    }
    Ok(IndexSeries {
        label: label.to_owned(),
        counts,
        totals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::query::ProximityQuery;

    fn doc(id: &str, year: i32, tag: Option<&str>, text: &str) -> CorpusDocument {
        CorpusDocument {
            doc_id: id.into(),
            year,
            source_tag: tag.map(Into::into),
            text: text.into(),
        }
    }

    fn q() -> ProximityQuery {
        ProximityQuery::new(&["globalization"], &["chaos"], 50).unwrap()
    }

    fn series(label: &str, counts: &[(i32, u64)], totals: &[(i32, u64)]) -> IndexSeries {
        IndexSeries {
            label: label.into(),
            counts: counts.iter().copied().collect(),
            totals: totals.iter().copied().collect(),
        }
    }

    #[test]
    fn counts_hit_documents_per_year() {
        let corpus = vec![
            doc("1", 2020, None, "globalization brings chaos"),
            doc("2", 2020, None, "globalization is fine"),
            doc("3", 2020, None, "chaos near globalization again"),
        ];
        let idx = build_index(&corpus, &q(), None);
        assert_eq!(idx.counts, [(2020, 2)].into_iter().collect());
        assert_eq!(idx.totals, [(2020, 3)].into_iter().collect());
        assert_eq!(idx.label, "all");
    }

    #[test]
    fn empty_corpus_gives_empty_series() {
        let idx = build_index(&[], &q(), None);
        assert!(idx.counts.is_empty());
        assert!(idx.totals.is_empty());
    }

    #[test]
    fn zero_hit_years_still_appear() {
        let corpus = vec![doc("1", 2019, None, "nothing here")];
        let idx = build_index(&corpus, &q(), None);
        assert_eq!(idx.counts, [(2019, 0)].into_iter().collect());
        assert_eq!(idx.totals, [(2019, 1)].into_iter().collect());
    }

    #[test]
    fn source_filter_restricts_scans_and_totals() {
        let corpus = vec![
            doc("1", 2020, Some("nyt"), "globalization brings chaos"),
            doc("2", 2020, Some("ap"), "globalization brings chaos"),
            doc("3", 2020, None, "globalization brings chaos"),
        ];
        let idx = build_index(&corpus, &q(), Some("nyt"));
        assert_eq!(idx.counts, [(2020, 1)].into_iter().collect());
        assert_eq!(idx.totals, [(2020, 1)].into_iter().collect());
        assert_eq!(idx.label, "nyt");
    }

    #[test]
    fn occurrence_mode_counts_contexts_not_documents() {
        let corpus = vec![doc(
            "1",
            2020,
            None,
            "globalization chaos globalization calm calm globalization",
        )];
        let documents = build_index_counting(&corpus, &q(), None, CountMode::Documents);
        assert_eq!(documents.counts[&2020], 1);
        let occurrences = build_index_counting(&corpus, &q(), None, CountMode::Occurrences);
        assert_eq!(occurrences.counts[&2020], 3);
    }

    #[test]
    fn growth_ratio_matches_published_endpoints() {
        let treatment = series("t", &[(2016, 566), (2024, 1333)], &[(2016, 9000), (2024, 9000)]);
        assert_eq!(growth_ratio(&treatment, 2016, 2024).unwrap(), 1333.0 / 566.0);

        let control = series("c", &[(2016, 695), (2024, 611)], &[(2016, 9000), (2024, 9000)]);
        assert_eq!(growth_ratio(&control, 2016, 2024).unwrap(), 611.0 / 695.0);

        assert_eq!(growth_ratio(&treatment, 2016, 2016).unwrap(), 1.0);
    }

    #[test]
    fn growth_ratio_error_paths() {
        let s = series("s", &[(2016, 0), (2024, 10)], &[(2016, 5), (2024, 20)]);
        assert_eq!(
            growth_ratio(&s, 2015, 2024),
            Err(SeriesError::MissingYear(2015))
        );
        assert_eq!(
            growth_ratio(&s, 2016, 2024),
            Err(SeriesError::ZeroBaseline(2016))
        );
    }

    #[test]
    fn placebo_compare_matches_published_arithmetic() {
        let treatment = series("t", &[(2016, 566), (2024, 1333)], &[]);
        let control = series("c", &[(2016, 695), (2024, 611)], &[]);
        let cmp = placebo_compare(&treatment, &control, 2016, 2024).unwrap();
        assert_eq!(cmp.treatment_ratio, 2.3551236749116606);
        assert_eq!(cmp.control_ratio, 0.879136690647482);
        assert_eq!(cmp.divergence, 2.6789049984674373);
    }

    #[test]
    fn placebo_degenerate_cases() {
        let flat = series("f", &[(2016, 100), (2024, 100)], &[]);
        let doubling = series("d", &[(2016, 50), (2024, 100)], &[]);
        let cmp = placebo_compare(&doubling, &flat, 2016, 2024).unwrap();
        assert_eq!(cmp.divergence, 2.0);

        let same = placebo_compare(&flat, &flat, 2016, 2024).unwrap();
        assert_eq!(same.divergence, 1.0);

        let dead_control = series("z", &[(2016, 10), (2024, 0)], &[]);
        assert_eq!(
            placebo_compare(&doubling, &dead_control, 2016, 2024),
            Err(SeriesError::ZeroControlRatio)
        );
    }

    #[test]
    fn csv_round_trip() {
        let s = series(
            "t",
            &[(2000, 272), (2016, 566), (2024, 1333)],
            &[(2000, 5000), (2016, 6000), (2024, 7000)],
        );
        let mut buf = Vec::new();
        write_series_csv(&s, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "year,count,total\n2000,272,5000\n2016,566,6000\n2024,1333,7000\n"
        );
        let back = read_series_csv(text.as_bytes(), "t").unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn csv_rejects_bad_input() {
        assert!(matches!(
            read_series_csv("bad header\n2000,1,2\n".as_bytes(), "x"),
            Err(SeriesError::MalformedCsv { line: 1, .. })
        ));
        assert!(matches!(
            read_series_csv("year,count,total\n2000,1\n".as_bytes(), "x"),
            Err(SeriesError::MalformedCsv { line: 2, .. })
        ));
        assert!(matches!(
            read_series_csv("year,count,total\n2000,one,2\n".as_bytes(), "x"),
            Err(SeriesError::MalformedCsv { line: 2, .. })
        ));
    }

    #[test]
    fn series_round_trips_through_json() {
        let s = series("t", &[(2016, 566), (2024, 1333)], &[(2016, 9000), (2024, 9100)]);
        let json = serde_json::to_string(&s).unwrap();
        let back: IndexSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
