//! Per-paper percentile indicators on a single citation distribution.
//!
//! All values are percentages in `[0, 100]` computed from exact integer
//! counts with a single floating-point division each.

use std::fmt;
use std::io;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distribution::{CellKey, CitationDistribution};
use crate::error::{Error, Result};

/// The six percentile indicators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Indicator {
    Hazen,
    Incites,
    P100,
    P100Prime,
    CpIn,
    CpEx,
}

impl Indicator {
    pub const ALL: [Indicator; 6] = [
        Indicator::Hazen,
        Indicator::Incites,
        Indicator::P100,
        Indicator::P100Prime,
        Indicator::CpIn,
        Indicator::CpEx,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Indicator::Hazen => "hazen",
            Indicator::Incites => "incites",
            Indicator::P100 => "p100",
            Indicator::P100Prime => "p100-prime",
            Indicator::CpIn => "cp-in",
            Indicator::CpEx => "cp-ex",
        }
    }

    /// Column name used in tabular output.
    pub fn column(self) -> &'static str {
        match self {
            Indicator::Hazen => "hazen",
            Indicator::Incites => "incites",
            Indicator::P100 => "p100",
            Indicator::P100Prime => "p100_prime",
            Indicator::CpIn => "cp_in",
            Indicator::CpEx => "cp_ex",
        }
    }

    /// Evaluates the indicator for `cc` on `dist`.
    pub fn value(self, dist: &CitationDistribution, cc: u64) -> Result<f64> {
        match self {
            Indicator::Hazen => hazen_pp(dist, cc),
            Indicator::Incites => incites_percentile(dist, cc),
            Indicator::P100 => p100(dist, cc),
            Indicator::P100Prime => p100_prime(dist, cc),
            Indicator::CpIn => cp_in(dist, cc),
            Indicator::CpEx => cp_ex(dist, cc),
        }
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Indicator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        Indicator::ALL
            .into_iter()
            .find(|i| i.name() == norm || (norm == "p100'" && *i == Indicator::P100Prime))
            .ok_or_else(|| Error::UnknownIndicator(s.to_string()))
    }
}

fn pct(num: u64, den: u64) -> f64 {
    100.0 * num as f64 / den as f64
}

/// Hazen plotting position in percent: `100 (r - 0.5) / n` with `r` the mean rank.
pub fn hazen_pp(dist: &CitationDistribution, cc: u64) -> Result<f64> {
    let k = dist.position(cc)?;
    // (below + (count + 1) / 2 - 1/2) / n, kept in integers.
    let twice = 2 * dist.below_at(k) + dist.entries()[k].count;
    Ok(pct(twice, 2 * dist.n()))
}

/// Share of papers with at least `cc` citations.
pub fn incites_percentile(dist: &CitationDistribution, cc: u64) -> Result<f64> {
    Ok(pct(dist.at_or_above(cc)?, dist.n()))
}

/// Rank among unique values scaled to `[0, 100]`.
pub fn p100(dist: &CitationDistribution, cc: u64) -> Result<f64> {
    let k = dist.position(cc)?;
    let i_max = dist.unique_len() as u64 - 1;
    if i_max == 0 {
        return Err(Error::DegenerateScale);
    }
    Ok(pct(k as u64, i_max))
}

/// Size-frequency rank scaled to `[0, 100]`; `j_max` is the number of papers
/// below the highest citation count.
pub fn p100_prime(dist: &CitationDistribution, cc: u64) -> Result<f64> {
    let j = dist.below(cc)?;
    let j_max = dist.below(dist.max_cc())?;
    if j_max == 0 {
        return Err(Error::DegenerateScale);
    }
    Ok(pct(j, j_max))
}

/// Cumulative percentage including the papers at `cc`.
pub fn cp_in(dist: &CitationDistribution, cc: u64) -> Result<f64> {
    Ok(pct(dist.at_or_below(cc)?, dist.n()))
}

/// Cumulative percentage of papers strictly below `cc`.
pub fn cp_ex(dist: &CitationDistribution, cc: u64) -> Result<f64> {
    Ok(pct(dist.below(cc)?, dist.n()))
}

/// One value per indicator; `None` where the indicator was not computed or is
/// undefined (degenerate scale).
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct IndicatorValues {
    pub hazen: Option<f64>,
    pub incites: Option<f64>,
    pub p100: Option<f64>,
    pub p100_prime: Option<f64>,
    pub cp_in: Option<f64>,
    pub cp_ex: Option<f64>,
}

impl IndicatorValues {
    pub fn get(&self, indicator: Indicator) -> Option<f64> {
        match indicator {
            Indicator::Hazen => self.hazen,
            Indicator::Incites => self.incites,
            Indicator::P100 => self.p100,
            Indicator::P100Prime => self.p100_prime,
            Indicator::CpIn => self.cp_in,
            Indicator::CpEx => self.cp_ex,
        }
    }

    pub fn set(&mut self, indicator: Indicator, value: Option<f64>) {
        let slot = match indicator {
            Indicator::Hazen => &mut self.hazen,
            Indicator::Incites => &mut self.incites,
            Indicator::P100 => &mut self.p100,
            Indicator::P100Prime => &mut self.p100_prime,
            Indicator::CpIn => &mut self.cp_in,
            Indicator::CpEx => &mut self.cp_ex,
        };
        *slot = value;
    }
}

/// One row of an [`IndicatorTable`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorRow {
    pub cc: u64,
    pub count: u64,
    /// Mean position of the tied papers, ranks ascending with citations.
    pub mean_rank: f64,
    pub hazen: f64,
    /// Papers with at least this many citations.
    pub rank_k: u64,
    pub incites: f64,
    /// Rank among unique values, from 0.
    pub rank_i: u64,
    pub p100: Option<f64>,
    /// Papers with fewer citations.
    pub rank_j: u64,
    pub p100_prime: Option<f64>,
    pub cp_in: f64,
    pub cp_ex: f64,
}

/// All six indicators for every unique citation count of one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorTable {
    pub key: CellKey,
    pub rows: Vec<IndicatorRow>,
}

pub const TABLE_COLUMNS: [&str; 12] = [
    "cc",
    "count",
    "mean_rank",
    "hazen",
    "rank_k",
    "incites",
    "rank_i",
    "p100",
    "rank_j",
    "p100_prime",
    "cp_in",
    "cp_ex",
];

/// Computes the full table. P100 and P100′ are `None` on a single-value
/// distribution instead of failing the table.
pub fn indicator_table(dist: &CitationDistribution) -> IndicatorTable {
    let n = dist.n();
    let j_max = n - dist.entries()[dist.unique_len() - 1].count;
    let i_max = dist.unique_len() as u64 - 1;
    let rows = dist
        .entries()
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let below = dist.below_at(k);
            IndicatorRow {
                cc: e.cc,
                count: e.count,
                mean_rank: below as f64 + (e.count as f64 + 1.0) / 2.0,
                hazen: pct(2 * below + e.count, 2 * n),
                rank_k: n - below,
                incites: pct(n - below, n),
                rank_i: k as u64,
                p100: (i_max > 0).then(|| pct(k as u64, i_max)),
                rank_j: below,
                p100_prime: (j_max > 0).then(|| pct(below, j_max)),
                cp_in: pct(below + e.count, n),
                cp_ex: pct(below, n),
            }
        })
        .collect();
    IndicatorTable {
        key: dist.key().clone(),
        rows,
    }
}

pub(crate) fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl IndicatorRow {
    /// Values in [`TABLE_COLUMNS`] order, full precision.
    pub fn fields(&self) -> [String; 12] {
        [
            self.cc.to_string(),
            self.count.to_string(),
            self.mean_rank.to_string(),
            self.hazen.to_string(),
            self.rank_k.to_string(),
            self.incites.to_string(),
            self.rank_i.to_string(),
            fmt_opt(self.p100),
            self.rank_j.to_string(),
            fmt_opt(self.p100_prime),
            self.cp_in.to_string(),
            self.cp_ex.to_string(),
        ]
    }
}

impl IndicatorTable {
    pub fn row(&self, cc: u64) -> Option<&IndicatorRow> {
        self.rows
            .binary_search_by_key(&cc, |r| r.cc)
            .ok()
            .map(|k| &self.rows[k])
    }

    /// Writes the table as CSV, full precision.
    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(TABLE_COLUMNS)?;
        for r in &self.rows {
            w.write_record(r.fields())?;
        }
        w.flush().map_err(|e| Error::Csv(e.into()))?;
        Ok(())
    }

    /// JSON form: the cell key plus an array of rows keyed by the CSV column names.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "year": self.key.year,
            "category": self.key.category,
            "rows": self.rows,
        })
    }
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

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 0.005
    }

    #[test]
    fn hazen_examples() {
        let d = sample21();
        assert!(close(hazen_pp(&d, 20).unwrap(), 95.24));
        assert!(close(hazen_pp(&d, 0).unwrap(), 9.52));
        let single = CitationDistribution::from_citations(CellKey::new(1, "a"), [5]).unwrap();
        assert_eq!(hazen_pp(&single, 5).unwrap(), 50.0);
    }

    #[test]
    fn incites_examples() {
        let d = sample21();
        assert!(close(incites_percentile(&d, 13).unwrap(), 19.05));
        assert!(close(incites_percentile(&d, 20).unwrap(), 9.52));
        assert_eq!(incites_percentile(&d, 0).unwrap(), 100.0);
    }

    #[test]
    fn p100_examples() {
        let d = sample21();
        assert!(close(p100(&d, 1).unwrap(), 11.11));
        assert_eq!(p100(&d, 0).unwrap(), 0.0);
        assert_eq!(p100(&d, 20).unwrap(), 100.0);
        assert!(close(p100_prime(&d, 1).unwrap(), 21.05));
        assert!(close(p100_prime(&d, 13).unwrap(), 89.47));
        assert_eq!(p100_prime(&d, 20).unwrap(), 100.0);
    }

    #[test]
    fn cumulative_examples() {
        let d = sample21();
        assert!(close(cp_in(&d, 13).unwrap(), 90.48));
        assert!(close(cp_in(&d, 0).unwrap(), 19.05));
        assert_eq!(cp_in(&d, 20).unwrap(), 100.0);
        assert!(close(cp_ex(&d, 20).unwrap(), 90.48));
        assert!(close(cp_ex(&d, 1).unwrap(), 19.05));
        assert_eq!(cp_ex(&d, 0).unwrap(), 0.0);
    }

    #[test]
    fn errors() {
        let d = sample21();
        assert!(matches!(cp_in(&d, 5), Err(Error::UnknownCitationCount(5))));
        let tied = CitationDistribution::from_citations(CellKey::new(1, "a"), [0, 0, 0]).unwrap();
        assert!(matches!(p100(&tied, 0), Err(Error::DegenerateScale)));
        assert!(matches!(p100_prime(&tied, 0), Err(Error::DegenerateScale)));
    }

    #[test]
    fn table_degenerate_row() {
        let tied = CitationDistribution::from_citations(CellKey::new(1, "a"), [0, 0, 0]).unwrap();
        let t = indicator_table(&tied);
        assert_eq!(t.rows.len(), 1);
        let r = &t.rows[0];
        assert_eq!(
            (r.hazen, r.incites, r.cp_in, r.cp_ex),
            (50.0, 100.0, 100.0, 0.0)
        );
        assert_eq!((r.p100, r.p100_prime), (None, None));
    }

    #[test]
    fn table_two_values() {
        let d = CitationDistribution::from_citations(CellKey::new(1, "a"), [0, 1]).unwrap();
        let t = indicator_table(&d);
        let cp_ex: Vec<f64> = t.rows.iter().map(|r| r.cp_ex).collect();
        let cp_in: Vec<f64> = t.rows.iter().map(|r| r.cp_in).collect();
        let p: Vec<Option<f64>> = t.rows.iter().map(|r| r.p100).collect();
        assert_eq!(cp_ex, vec![0.0, 50.0]);
        assert_eq!(cp_in, vec![50.0, 100.0]);
        assert_eq!(p, vec![Some(0.0), Some(100.0)]);
    }

    #[test]
    fn table_agrees_with_single_value_functions() {
        let d = sample21();
        let t = indicator_table(&d);
        for r in &t.rows {
            assert_eq!(r.hazen, hazen_pp(&d, r.cc).unwrap());
            assert_eq!(r.incites, incites_percentile(&d, r.cc).unwrap());
            assert_eq!(r.p100, p100(&d, r.cc).ok());
            assert_eq!(r.p100_prime, p100_prime(&d, r.cc).ok());
            assert_eq!(r.cp_in, cp_in(&d, r.cc).unwrap());
            assert_eq!(r.cp_ex, cp_ex(&d, r.cc).unwrap());
            assert_eq!(r.mean_rank, d.mean_rank(r.cc).unwrap());
            let ranks = d.unique_value_rank(r.cc).unwrap();
            assert_eq!((r.rank_i, r.rank_j), (ranks.i, ranks.j));
            assert_eq!(r.rank_k, d.at_or_above(r.cc).unwrap());
        }
    }

    #[test]
    fn csv_header_and_empty_cells() {
        let tied = CitationDistribution::from_citations(CellKey::new(1, "a"), [3, 3]).unwrap();
        let mut buf = Vec::new();
        indicator_table(&tied).write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "cc,count,mean_rank,hazen,rank_k,incites,rank_i,p100,rank_j,p100_prime,cp_in,cp_ex\n\
             3,2,1.5,50,2,100,0,,0,,100,0\n"
        );
        let json = indicator_table(&tied).to_json();
        assert!(json["rows"][0]["p100"].is_null());
        assert_eq!(json["rows"][0]["cp_in"], 100.0);
    }

    #[test]
    fn indicator_names_round_trip() {
        for ind in Indicator::ALL {
            assert_eq!(ind.name().parse::<Indicator>().unwrap(), ind);
            assert_eq!(ind.column().parse::<Indicator>().unwrap(), ind);
        }
        assert!("median".parse::<Indicator>().is_err());
    }
}
