//! Citation distributions for one (publication year, subject category) cell.
//!
//! A [`CitationDistribution`] is the size-frequency form of a cell: the unique
//! citation counts in ascending order with the number of papers holding each.
//! Two rank systems are derived from it:
//!
//! - mean ranks over papers, ascending with citations, ties sharing the mean
//!   of their positions;
//! - ranks over unique values (`i`) and size-frequency ranks (`j`, the number
//!   of papers strictly below).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One normalization reference set: a publication year and a subject category.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellKey {
    pub year: i32,
    pub category: String,
}

impl CellKey {
    pub fn new(year: i32, category: impl Into<String>) -> Self {
        Self {
            year,
            category: category.into(),
        }
    }
}

impl fmt::Display for CellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.year, self.category)
    }
}

impl FromStr for CellKey {
    type Err = Error;

    /// Parses `YEAR:CATEGORY`, e.g. `2000:PHYS`.
    fn from_str(s: &str) -> Result<Self> {
        let (year, category) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidCellKey(s.to_string()))?;
        let year = year
            .trim()
            .parse()
            .map_err(|_| Error::InvalidCellKey(s.to_string()))?;
        let category = category.trim();
        if category.is_empty() {
            return Err(Error::InvalidCellKey(s.to_string()));
        }
        Ok(Self::new(year, category))
    }
}

/// A paper's (possibly fractional) assignment to a unit such as a country.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitShare {
    pub unit: String,
    pub fraction: f64,
}

/// One paper.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PublicationRecord {
    pub paper_id: String,
    pub year: i32,
    pub citations: u64,
    pub categories: Vec<String>,
    pub units: Vec<UnitShare>,
}

impl PublicationRecord {
    /// Builds a validated record. Categories must be non-empty and distinct;
    /// unit fractions must lie in (0, 1].
    pub fn new(
        paper_id: impl Into<String>,
        year: i32,
        citations: u64,
        categories: Vec<String>,
        units: Vec<UnitShare>,
    ) -> Result<Self> {
        if categories.is_empty() {
            return Err(Error::NoCategories);
        }
        for (k, c) in categories.iter().enumerate() {
            if categories[..k].contains(c) {
                return Err(Error::DuplicateCategory(c.clone()));
            }
        }
        for share in &units {
            if !(share.fraction > 0.0 && share.fraction <= 1.0) {
                return Err(Error::InvalidFraction(share.fraction));
            }
        }
        Ok(Self {
            paper_id: paper_id.into(),
            year,
            citations,
            categories,
            units,
        })
    }

    pub fn cells(&self) -> impl Iterator<Item = CellKey> + '_ {
        self.categories
            .iter()
            .map(move |c| CellKey::new(self.year, c.clone()))
    }

    pub fn in_cell(&self, key: &CellKey) -> bool {
        self.year == key.year && self.categories.contains(&key.category)
    }
}

/// A unique citation count and the number of papers holding it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub cc: u64,
    pub count: u64,
}

/// Unique-value rank `i` and size-frequency rank `j` of a citation count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniqueRank {
    pub cc: u64,
    pub i: u64,
    pub j: u64,
}

/// Size-frequency distribution of a single cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CitationDistribution {
    key: CellKey,
    entries: Vec<Entry>,
    /// `below[k]` = papers with fewer citations than `entries[k].cc`.
    below: Vec<u64>,
    n: u64,
}

impl CitationDistribution {
    /// Builds a distribution from per-entry counts. Entries must be strictly
    /// increasing in `cc` with every count at least one.
    pub fn from_entries(key: CellKey, entries: Vec<Entry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        for pair in entries.windows(2) {
            if pair[0].cc >= pair[1].cc {
                return Err(Error::InvalidConfig(format!(
                    "citation counts must be strictly increasing ({} then {})",
                    pair[0].cc, pair[1].cc
                )));
            }
        }
        if let Some(e) = entries.iter().find(|e| e.count == 0) {
            return Err(Error::InvalidConfig(format!(
                "citation count {} has zero papers",
                e.cc
            )));
        }
        let mut below = Vec::with_capacity(entries.len());
        let mut acc = 0u64;
        for e in &entries {
            below.push(acc);
            acc += e.count;
        }
        Ok(Self {
            key,
            entries,
            below,
            n: acc,
        })
    }

    /// Aggregates raw per-paper citation counts.
    pub fn from_citations(key: CellKey, citations: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for cc in citations {
            *counts.entry(cc).or_default() += 1;
        }
        let entries = counts
            .into_iter()
            .map(|(cc, count)| Entry { cc, count })
            .collect();
        Self::from_entries(key, entries)
    }

    pub fn key(&self) -> &CellKey {
        &self.key
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Total number of papers.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Number of unique citation counts.
    pub fn unique_len(&self) -> usize {
        self.entries.len()
    }

    pub fn min_cc(&self) -> u64 {
        self.entries[0].cc
    }

    pub fn max_cc(&self) -> u64 {
        self.entries[self.entries.len() - 1].cc
    }

    pub fn contains(&self, cc: u64) -> bool {
        self.position(cc).is_ok()
    }

    /// Index of `cc` among the unique values.
    pub fn position(&self, cc: u64) -> Result<usize> {
        self.entries
            .binary_search_by_key(&cc, |e| e.cc)
            .map_err(|_| Error::UnknownCitationCount(cc))
    }

    pub fn count(&self, cc: u64) -> Result<u64> {
        Ok(self.entries[self.position(cc)?].count)
    }

    /// Papers with strictly fewer citations than `cc`.
    pub fn below(&self, cc: u64) -> Result<u64> {
        Ok(self.below[self.position(cc)?])
    }

    pub(crate) fn below_at(&self, k: usize) -> u64 {
        self.below[k]
    }

    /// Papers with at most `cc` citations.
    pub fn at_or_below(&self, cc: u64) -> Result<u64> {
        let k = self.position(cc)?;
        Ok(self.below[k] + self.entries[k].count)
    }

    /// Papers with at least `cc` citations.
    pub fn at_or_above(&self, cc: u64) -> Result<u64> {
        Ok(self.n - self.below(cc)?)
    }

    /// Cumulative paper counts, one per unique value, ending at `n`.
    pub fn cumulative(&self) -> Vec<u64> {
        self.entries
            .iter()
            .zip(&self.below)
            .map(|(e, b)| b + e.count)
            .collect()
    }

    /// Mean rank of the papers holding `cc`. Ranks run 1..=n ascending with
    /// citations; tied papers share the mean of their positions.
    pub fn mean_rank(&self, cc: u64) -> Result<f64> {
        let k = self.position(cc)?;
        Ok(self.mean_rank_at(k))
    }

    pub(crate) fn mean_rank_at(&self, k: usize) -> f64 {
        self.below[k] as f64 + (self.entries[k].count as f64 + 1.0) / 2.0
    }

    pub fn mean_ranks(&self) -> Vec<(u64, f64)> {
        (0..self.entries.len())
            .map(|k| (self.entries[k].cc, self.mean_rank_at(k)))
            .collect()
    }

    /// `i`: 0-based index among unique values; `j`: papers strictly below.
    pub fn unique_value_rank(&self, cc: u64) -> Result<UniqueRank> {
        let k = self.position(cc)?;
        Ok(UniqueRank {
            cc,
            i: k as u64,
            j: self.below[k],
        })
    }

    pub fn unique_value_ranks(&self) -> Vec<UniqueRank> {
        self.entries
            .iter()
            .zip(&self.below)
            .enumerate()
            .map(|(k, (e, &j))| UniqueRank {
                cc: e.cc,
                i: k as u64,
                j,
            })
            .collect()
    }

    /// Expands back into one citation count per paper, ascending.
    pub fn expand(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.cc, e.count as usize))
    }
}

/// Groups the records of one cell into its distribution.
///
/// Every record must belong to the cell; an empty input is rejected.
pub fn build_distribution<'a>(
    records: impl IntoIterator<Item = &'a PublicationRecord>,
    key: &CellKey,
) -> Result<CitationDistribution> {
    let mut citations = Vec::new();
    for r in records {
        if !r.in_cell(key) {
            return Err(Error::RecordNotInCell {
                paper_id: r.paper_id.clone(),
                cell: key.clone(),
            });
        }
        citations.push(r.citations);
    }
    CitationDistribution::from_citations(key.clone(), citations)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample21() -> CitationDistribution {
        let ccs = [
            20, 20, 13, 13, 10, 9, 8, 8, 7, 7, 7, 7, 3, 2, 1, 1, 1, 0, 0, 0, 0,
        ];
        CitationDistribution::from_citations(CellKey::new(2000, "PHYS"), ccs).unwrap()
    }

    fn record(id: &str, cc: u64, cats: &[&str]) -> PublicationRecord {
        PublicationRecord::new(
            id,
            2000,
            cc,
            cats.iter().map(|c| c.to_string()).collect(),
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn sample_entries() {
        let d = sample21();
        let got: Vec<(u64, u64)> = d.entries().iter().map(|e| (e.cc, e.count)).collect();
        assert_eq!(
            got,
            vec![
                (0, 4),
                (1, 3),
                (2, 1),
                (3, 1),
                (7, 4),
                (8, 2),
                (9, 1),
                (10, 1),
                (13, 2),
                (20, 2)
            ]
        );
        assert_eq!(d.n(), 21);
        assert_eq!(*d.cumulative().last().unwrap(), 21);
    }

    #[test]
    fn singleton_and_all_tied() {
        let key = CellKey::new(2001, "X");
        let d = CitationDistribution::from_citations(key.clone(), [5]).unwrap();
        assert_eq!(d.entries(), &[Entry { cc: 5, count: 1 }]);
        assert_eq!(d.n(), 1);
        let d = CitationDistribution::from_citations(key, [0, 0, 0]).unwrap();
        assert_eq!(d.entries(), &[Entry { cc: 0, count: 3 }]);
        assert_eq!(d.mean_rank(0).unwrap(), 2.0);
        let r = d.unique_value_rank(0).unwrap();
        assert_eq!((r.i, r.j), (0, 0));
    }

    #[test]
    fn empty_is_rejected() {
        let err = CitationDistribution::from_citations(CellKey::new(2000, "X"), []).unwrap_err();
        assert!(matches!(err, Error::EmptyDistribution));
        let err = build_distribution([], &CellKey::new(2000, "X")).unwrap_err();
        assert!(matches!(err, Error::EmptyDistribution));
    }

    #[test]
    fn mean_ranks_ascend_with_citations() {
        let d = sample21();
        assert_eq!(d.mean_rank(20).unwrap(), 20.5);
        assert_eq!(d.mean_rank(0).unwrap(), 2.5);
        assert_eq!(d.mean_rank(13).unwrap(), 18.5);
        assert_eq!(d.mean_rank(7).unwrap(), 11.5);
        assert_eq!(d.mean_rank(1).unwrap(), 6.0);
        let d = CitationDistribution::from_citations(CellKey::new(1, "a"), [1, 2, 3]).unwrap();
        assert_eq!(d.mean_ranks(), vec![(1, 1.0), (2, 2.0), (3, 3.0)]);
    }

    #[test]
    fn unique_value_ranks_match_table2() {
        let d = sample21();
        let r = d.unique_value_rank(1).unwrap();
        assert_eq!((r.i, r.j), (1, 4));
        let r = d.unique_value_rank(20).unwrap();
        assert_eq!((r.i, r.j), (9, 19));
        let j: Vec<u64> = d.unique_value_ranks().iter().map(|r| r.j).collect();
        assert_eq!(j, vec![0, 4, 7, 8, 9, 13, 15, 16, 17, 19]);
    }

    #[test]
    fn unknown_cc() {
        assert!(matches!(
            sample21().mean_rank(4),
            Err(Error::UnknownCitationCount(4))
        ));
    }

    #[test]
    fn build_from_records() {
        let key = CellKey::new(2000, "A");
        let recs = [
            record("p1", 3, &["A"]),
            record("p2", 3, &["B", "A"]),
            record("p3", 0, &["A"]),
        ];
        let d = build_distribution(&recs, &key).unwrap();
        assert_eq!(
            d.entries(),
            &[Entry { cc: 0, count: 1 }, Entry { cc: 3, count: 2 }]
        );

        let other = [record("q", 1, &["B"])];
        assert!(matches!(
            build_distribution(&other, &key),
            Err(Error::RecordNotInCell { .. })
        ));
    }

    #[test]
    fn record_validation() {
        assert!(matches!(
            PublicationRecord::new("x", 2000, 1, vec![], vec![]),
            Err(Error::NoCategories)
        ));
        let units = vec![UnitShare {
            unit: "DE".into(),
            fraction: 0.0,
        }];
        assert!(matches!(
            PublicationRecord::new("x", 2000, 1, vec!["A".into()], units),
            Err(Error::InvalidFraction(_))
        ));
    }

    #[test]
    fn cell_key_parse() {
        let k: CellKey = "2000:PHYS".parse().unwrap();
        assert_eq!(k, CellKey::new(2000, "PHYS"));
        assert_eq!(k.to_string(), "2000:PHYS");
        assert!("PHYS".parse::<CellKey>().is_err());
        assert!("20x0:PHYS".parse::<CellKey>().is_err());
    }
}
