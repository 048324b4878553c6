//! Aggregation of percentile ranks: across a paper's subject categories,
//! across a unit's papers, into I3 class-weight sums, and fractional
//! top-x% credits.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distribution::CitationDistribution;
use crate::error::{Error, Result};

/// A paper's rank in one of its cells together with the cell size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryPr {
    pub category: String,
    pub year: i32,
    pub pr: f64,
    pub n: u64,
}

/// Per-category ranks of one paper and their size-weighted mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperScore {
    pub paper_id: String,
    pub categories: Vec<CategoryPr>,
    pub wpr: f64,
}

impl PaperScore {
    pub fn new(paper_id: impl Into<String>, categories: Vec<CategoryPr>) -> Result<Self> {
        let pairs: Vec<(f64, u64)> = categories.iter().map(|c| (c.pr, c.n)).collect();
        let wpr = weighted_pr(&pairs)?;
        Ok(Self {
            paper_id: paper_id.into(),
            categories,
            wpr,
        })
    }
}

/// Unit-level means over the unit's papers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitScore {
    pub unit: String,
    /// Number of papers assigned (fully or fractionally) to the unit.
    pub papers: u64,
    /// Unweighted mean of the papers' wPRs.
    pub mwpr: f64,
    /// Mean of the papers' wPRs weighted by the unit's fraction of each paper.
    pub mwpr_f: f64,
    pub fraction_sum: f64,
}

impl UnitScore {
    pub fn score(&self, fractional: bool) -> f64 {
        if fractional {
            self.mwpr_f
        } else {
            self.mwpr
        }
    }
}

/// Mean of per-category ranks weighted by the size of each category's cell.
pub fn weighted_pr(per_category: &[(f64, u64)]) -> Result<f64> {
    if per_category.is_empty() {
        return Err(Error::NoCategories);
    }
    if let Some(&(_, n)) = per_category.iter().find(|(_, n)| *n == 0) {
        return Err(Error::InvalidConfig(format!(
            "category size {n} must be at least 1"
        )));
    }
    let total: u64 = per_category.iter().map(|(_, n)| n).sum();
    let weighted: f64 = per_category.iter().map(|(pr, n)| pr * *n as f64).sum();
    Ok(weighted / total as f64)
}

/// Best-performing (smallest) distance-to-top value across categories, the
/// rule used by InCites for multi-category papers.
pub fn incites_min_rule(values: &[f64]) -> Result<f64> {
    values
        .iter()
        .copied()
        .reduce(f64::min)
        .ok_or(Error::NoCategories)
}

/// Unweighted mean of a unit's wPRs.
pub fn mean_weighted_pr(wprs: &[f64]) -> Result<f64> {
    if wprs.is_empty() {
        return Err(Error::NoPapers);
    }
    Ok(wprs.iter().sum::<f64>() / wprs.len() as f64)
}

/// Mean of `(wPR, fraction)` pairs weighted by the fractions.
pub fn mean_weighted_pr_fractional(pairs: &[(f64, f64)]) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::NoPapers);
    }
    if let Some(&(_, fr)) = pairs.iter().find(|(_, fr)| !(*fr > 0.0 && *fr <= 1.0)) {
        return Err(Error::InvalidFraction(fr));
    }
    let num: f64 = pairs.iter().map(|(w, fr)| w * fr).sum();
    let den: f64 = pairs.iter().map(|(_, fr)| fr).sum();
    Ok(num / den)
}

/// Credit towards the top-x% group for the papers holding one citation count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TopCredit {
    pub cc: u64,
    pub count: u64,
    /// Credit per paper in `[0, 1]`.
    pub credit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopShare {
    pub x_percent: f64,
    pub n: u64,
    /// Citation count of the papers that share the boundary, if any are partial.
    pub threshold_cc: Option<u64>,
    /// Ascending by citation count.
    pub rows: Vec<TopCredit>,
    pub total: f64,
}

impl TopShare {
    pub fn credit(&self, cc: u64) -> Option<f64> {
        self.rows.iter().find(|r| r.cc == cc).map(|r| r.credit)
    }
}

/// Fractional assignment to the x% most cited papers. Papers above the
/// threshold count fully; papers tied at the threshold split the remaining
/// places equally, so the credits always sum to `x * n / 100`.
pub fn top_x_fractional(dist: &CitationDistribution, x_percent: f64) -> Result<TopShare> {
    if !(x_percent > 0.0 && x_percent < 100.0) {
        return Err(Error::InvalidPercentile(x_percent));
    }
    let target = x_percent * dist.n() as f64 / 100.0;
    let mut above = 0u64;
    let mut threshold_cc = None;
    let mut rows: Vec<TopCredit> = dist
        .entries()
        .iter()
        .rev()
        .map(|e| {
            let credit = if (above + e.count) as f64 <= target {
                1.0
            } else if (above as f64) < target {
                threshold_cc = Some(e.cc);
                (target - above as f64) / e.count as f64
            } else {
                0.0
            };
            above += e.count;
            TopCredit {
                cc: e.cc,
                count: e.count,
                credit,
            }
        })
        .collect();
    rows.reverse();
    let total = rows.iter().map(|r| r.credit * r.count as f64).sum();
    Ok(TopShare {
        x_percent,
        n: dist.n(),
        threshold_cc,
        rows,
        total,
    })
}

/// One percentile-rank class: lower threshold and weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct I3Class {
    pub threshold: f64,
    pub weight: f64,
}

/// Percentile-rank classes for the integrated impact indicator, highest
/// threshold first.
///
/// Class `k` covers `[threshold_k, threshold_{k-1})`; the first class reaches
/// up to 100 inclusive. Ranks below the last threshold carry no weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct I3Config {
    classes: Vec<I3Class>,
}

impl I3Config {
    pub fn new(classes: Vec<I3Class>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::InvalidConfig("no classes".into()));
        }
        for c in &classes {
            if !(c.threshold >= 0.0 && c.threshold < 100.0) {
                return Err(Error::InvalidConfig(format!(
                    "threshold {} is outside [0, 100)",
                    c.threshold
                )));
            }
            if !(c.weight >= 0.0 && c.weight.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "weight {} is negative",
                    c.weight
                )));
            }
        }
        for w in classes.windows(2) {
            if w[1].threshold >= w[0].threshold {
                return Err(Error::NonDecreasingThresholds {
                    previous: w[0].threshold,
                    next: w[1].threshold,
                });
            }
        }
        Ok(Self { classes })
    }

    pub fn classes(&self) -> &[I3Class] {
        &self.classes
    }

    /// Index of the class holding `pr`, if any.
    pub fn class_of(&self, pr: f64) -> Option<usize> {
        self.classes.iter().position(|c| pr >= c.threshold)
    }
}

impl fmt::Display for I3Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("I3(")?;
        for (k, c) in self.classes.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}-{}", c.threshold, c.weight)?;
        }
        f.write_str(")")
    }
}

impl FromStr for I3Config {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_i3_notation(s)
    }
}

struct NotationParser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl NotationParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: char, what: &str) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn number(&mut self, what: &str) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(format!("expected {what}")));
        }
        let from = self.chars[start].0;
        let to = self
            .chars
            .get(self.pos)
            .map_or(self.text.len(), |&(i, _)| i);
        self.text[from..to].parse().map_err(|_| Error::Syntax {
            position: start,
            message: format!("malformed {what} {:?}", &self.text[from..to]),
        })
    }
}

/// Parses `I3(PC-W, PC-W, ...)`. Whitespace is free; the separator may be a
/// hyphen, minus sign, or en dash.
pub fn parse_i3_notation(text: &str) -> Result<I3Config> {
    let mut p = NotationParser {
        chars: text.char_indices().collect(),
        pos: 0,
        text,
    };
    p.expect('I', "\"I3(\"")?;
    if p.peek() != Some('3') {
        return Err(p.error("expected \"I3(\""));
    }
    p.pos += 1;
    p.expect('(', "\"(\"")?;
    let mut classes = Vec::new();
    loop {
        let threshold = p.number("threshold")?;
        p.skip_ws();
        match p.peek() {
            Some('-' | '\u{2212}' | '\u{2013}') => p.pos += 1,
            _ => return Err(p.error("expected \"-\" between threshold and weight")),
        }
        let weight = p.number("weight")?;
        classes.push(I3Class { threshold, weight });
        p.skip_ws();
        match p.peek() {
            Some(',') => p.pos += 1,
            Some(')') => {
                p.pos += 1;
                break;
            }
            _ => return Err(p.error("expected \",\" or \")\"")),
        }
    }
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.error("unexpected trailing input"));
    }
    I3Config::new(classes)
}

pub fn print_i3_notation(config: &I3Config) -> String {
    config.to_string()
}

/// Integrated impact indicator: sum over classes of papers-in-class times weight.
pub fn i3(paper_prs: &[f64], config: &I3Config) -> Result<f64> {
    let mut counts = vec![0u64; config.classes.len()];
    for &pr in paper_prs {
        if !(0.0..=100.0).contains(&pr) {
            return Err(Error::InvalidPercentile(pr));
        }
        if let Some(k) = config.class_of(pr) {
            counts[k] += 1;
        }
    }
    Ok(counts
        .iter()
        .zip(&config.classes)
        .map(|(&x, c)| x as f64 * c.weight)
        .sum())
}
