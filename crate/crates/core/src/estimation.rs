//! Estimating citation counts for given percentile ranks and vice versa.
//!
//! Two estimators are provided:
//!
//! - interval point-estimates ([`IntervalEstimator`]): every integer citation count is
//!   the midpoint of an interval of width `w` (1 by default), missing counts
//!   between the minimum and maximum are filled in with zero papers, and the
//!   position inside an interval is interpolated from the cumulative
//!   frequencies;
//! - linear interpolation between observed `(cc, pr)` anchor points
//!   ([`interpolate_cc`], [`interpolate_pr`]).
//!
//! Both work for either cumulative-percentage variant. The CP-EX form of the
//! interval estimator is the CP-IN form shifted up by one interval width.
//!
//! Ties on an interval boundary (`n * p` equal to a cumulative frequency)
//! resolve to the higher interval, so the estimate is the lower bound of the
//! next interval that holds papers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distribution::CitationDistribution;
use crate::error::{Error, Result};

/// Which cumulative percentage a computation is based on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CpVariant {
    /// Papers at or below a citation count.
    #[serde(rename = "cp-in")]
    In,
    /// Papers strictly below a citation count.
    #[serde(rename = "cp-ex")]
    Ex,
}

impl CpVariant {
    pub fn name(self) -> &'static str {
        match self {
            CpVariant::In => "cp-in",
            CpVariant::Ex => "cp-ex",
        }
    }

    pub fn indicator(self) -> crate::indicators::Indicator {
        match self {
            CpVariant::In => crate::indicators::Indicator::CpIn,
            CpVariant::Ex => crate::indicators::Indicator::CpEx,
        }
    }
}

impl fmt::Display for CpVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CpVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "cp-in" | "in" => Ok(CpVariant::In),
            "cp-ex" | "ex" => Ok(CpVariant::Ex),
            _ => Err(Error::UnknownIndicator(s.to_string())),
        }
    }
}

pub const DEFAULT_WIDTH: f64 = 1.0;

/// One row of the gap-free interval table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalRow {
    /// Interval midpoint (the citation count for width 1).
    pub cc: f64,
    pub lower: f64,
    pub upper: f64,
    pub frequency: u64,
    /// Cumulative frequency: including the row for CP-IN, excluding it for CP-EX.
    pub cumulative: u64,
    pub percent: f64,
    pub cp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpandedIntervalTable {
    pub variant: CpVariant,
    pub width: f64,
    pub n: u64,
    pub rows: Vec<IntervalRow>,
}

/// An interval holding at least one paper.
#[derive(Debug, Clone, Copy)]
struct Bin {
    index: u64,
    lower: f64,
    frequency: u64,
    below: u64,
}

/// Interval point-estimator for one distribution.
#[derive(Debug, Clone)]
pub struct IntervalEstimator {
    variant: CpVariant,
    width: f64,
    origin: f64,
    n: u64,
    bins: Vec<Bin>,
}

impl IntervalEstimator {
    pub fn new(dist: &CitationDistribution, variant: CpVariant) -> Self {
        Self::with_width(dist, variant, DEFAULT_WIDTH).expect("default width is valid")
    }

    /// Intervals of width `width` are centred on `min + k * width`; observed
    /// counts fall into the interval whose centre is nearest.
    pub fn with_width(dist: &CitationDistribution, variant: CpVariant, width: f64) -> Result<Self> {
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::InvalidWidth(width));
        }
        let origin = dist.min_cc() as f64;
        let mut bins: Vec<Bin> = Vec::new();
        let mut below = 0u64;
        for e in dist.entries() {
            let index = ((e.cc as f64 - origin) / width).round() as u64;
            match bins.last_mut() {
                Some(b) if b.index == index => b.frequency += e.count,
                _ => bins.push(Bin {
                    index,
                    lower: origin + index as f64 * width - width / 2.0,
                    frequency: e.count,
                    below,
                }),
            }
            below += e.count;
        }
        Ok(Self {
            variant,
            width,
            origin,
            n: dist.n(),
            bins,
        })
    }

    pub fn variant(&self) -> CpVariant {
        self.variant
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    fn first(&self) -> &Bin {
        &self.bins[0]
    }

    fn last(&self) -> &Bin {
        &self.bins[self.bins.len() - 1]
    }

    /// Percentage range `(low, high]` of ranks that can be estimated.
    pub fn estimable_range(&self) -> (f64, f64) {
        let n = self.n as f64;
        match self.variant {
            CpVariant::In => (100.0 * self.first().frequency as f64 / n, 100.0),
            CpVariant::Ex => (0.0, 100.0 * self.last().below as f64 / n),
        }
    }

    /// Citation-value range `[low, high]` accepted by [`IntervalEstimator::pr_for_cc`].
    pub fn value_range(&self) -> (f64, f64) {
        let half = self.width / 2.0;
        let max = self.origin + self.last().index as f64 * self.width;
        (self.origin - half, max + half)
    }

    /// Gap-free table of intervals from the minimum to the maximum count.
    pub fn table(&self) -> ExpandedIntervalTable {
        let n = self.n;
        let mut rows = Vec::with_capacity(self.last().index as usize + 1);
        let mut bins = self.bins.iter().peekable();
        let mut cum_in = 0u64;
        for index in 0..=self.last().index {
            let frequency = match bins.peek() {
                Some(b) if b.index == index => bins.next().map(|b| b.frequency).unwrap_or(0),
                _ => 0,
            };
            let below = cum_in;
            cum_in += frequency;
            let cumulative = match self.variant {
                CpVariant::In => cum_in,
                CpVariant::Ex => below,
            };
            let cc = self.origin + index as f64 * self.width;
            rows.push(IntervalRow {
                cc,
                lower: cc - self.width / 2.0,
                upper: cc + self.width / 2.0,
                frequency,
                cumulative,
                percent: 100.0 * frequency as f64 / n as f64,
                cp: 100.0 * cumulative as f64 / n as f64,
            });
        }
        ExpandedIntervalTable {
            variant: self.variant,
            width: self.width,
            n,
            rows,
        }
    }

    /// Estimated (real-valued) citation count for the proportion `p`.
    pub fn cc_for_pr(&self, p: f64) -> Result<f64> {
        let (low, high) = self.estimable_range();
        let out_of_range = || {
            Error::OutOfEstimableRange(format!(
                "percentile rank {} cannot be estimated; {} estimates need a rank in ({low}, {high}]",
                100.0 * p,
                self.variant
            ))
        };
        if !p.is_finite() {
            return Err(out_of_range());
        }
        let n = self.n as f64;
        let target = snap(p * n, n);
        let (lo_papers, hi_papers) = match self.variant {
            CpVariant::In => (self.first().frequency as f64, n),
            CpVariant::Ex => (0.0, self.last().below as f64),
        };
        if !(target > lo_papers && target <= hi_papers) {
            return Err(out_of_range());
        }
        let y = if target >= n {
            let b = self.last();
            b.lower + self.width
        } else {
            let k = self.bins.partition_point(|b| b.below as f64 <= target) - 1;
            let b = &self.bins[k];
            b.lower + (target - b.below as f64) / b.frequency as f64 * self.width
        };
        Ok(match self.variant {
            CpVariant::In => y,
            CpVariant::Ex => y + self.width,
        })
    }

    /// Estimated percentile rank (0..=100) for the citation value `x`.
    pub fn pr_for_cc(&self, x: f64) -> Result<f64> {
        let (low, high) = self.value_range();
        if !(x >= low && x <= high) {
            return Err(Error::OutOfEstimableRange(format!(
                "citation value {x} is outside the estimable range [{low}, {high}]"
            )));
        }
        let y = match self.variant {
            CpVariant::In => x,
            CpVariant::Ex => x - self.width,
        };
        if y < self.first().lower {
            return Ok(0.0);
        }
        let k = self.bins.partition_point(|b| b.lower <= y) - 1;
        let b = &self.bins[k];
        let papers = if y < b.lower + self.width {
            b.below as f64 + (y - b.lower) / self.width * b.frequency as f64
        } else {
            (b.below + b.frequency) as f64
        };
        Ok(100.0 * papers / self.n as f64)
    }
}

/// Rounds `t` to the nearest integer when it is within floating-point noise of it.
fn snap(t: f64, n: f64) -> f64 {
    let r = t.round();
    if (t - r).abs() <= 1e-12 * n.max(1.0) {
        r
    } else {
        t
    }
}

/// Interval table with the default width of one citation.
pub fn expand_intervals(dist: &CitationDistribution, variant: CpVariant) -> ExpandedIntervalTable {
    IntervalEstimator::new(dist, variant).table()
}

/// Citation count for proportion `p` (0..1) by interval point-estimation.
pub fn cc_for_pr(dist: &CitationDistribution, p: f64, variant: CpVariant) -> Result<f64> {
    IntervalEstimator::new(dist, variant).cc_for_pr(p)
}

/// Percentile rank for citation value `x` by interval point-estimation.
pub fn pr_for_cc(dist: &CitationDistribution, x: f64, variant: CpVariant) -> Result<f64> {
    IntervalEstimator::new(dist, variant).pr_for_cc(x)
}

/// Observed `(cc, pr)` points for linear interpolation, strictly increasing in
/// both coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Anchors {
    points: Vec<(f64, f64)>,
}

impl Anchors {
    /// Sorts the points by citation count and drops exact duplicates. Any
    /// other tie, or a rank that decreases with citations, is rejected.
    pub fn new(mut points: Vec<(f64, f64)>) -> Result<Self> {
        if points.iter().any(|(c, p)| !c.is_finite() || !p.is_finite()) {
            return Err(Error::InvalidAnchors("non-finite value".into()));
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        points.dedup();
        if points.is_empty() {
            return Err(Error::InvalidAnchors("no points".into()));
        }
        for w in points.windows(2) {
            if !(w[0].0 < w[1].0 && w[0].1 < w[1].1) {
                return Err(Error::InvalidAnchors(format!(
                    "({}, {}) and ({}, {}) are not strictly increasing",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(Self { points })
    }

    /// `(cc, cp)` for every unique citation count of the distribution.
    pub fn from_distribution(dist: &CitationDistribution, variant: CpVariant) -> Self {
        let n = dist.n() as f64;
        let points = dist
            .entries()
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let below = dist.below_at(k);
                let papers = match variant {
                    CpVariant::In => below + e.count,
                    CpVariant::Ex => below,
                };
                (e.cc as f64, 100.0 * papers as f64 / n)
            })
            .collect();
        Self { points }
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }
}

fn interpolate(points: &[(f64, f64)], target: f64, from_pr: bool, what: &str) -> Result<f64> {
    let key = |p: &(f64, f64)| if from_pr { p.1 } else { p.0 };
    let value = |p: &(f64, f64)| if from_pr { p.0 } else { p.1 };
    let lo = key(&points[0]);
    let hi = key(&points[points.len() - 1]);
    if !(target >= lo && target <= hi) {
        return Err(Error::OutOfRange(format!(
            "{what} {target} is outside the anchor span [{lo}, {hi}]"
        )));
    }
    let k = points.partition_point(|p| key(p) < target);
    let upper = &points[k];
    if key(upper) == target {
        return Ok(value(upper));
    }
    let lower = &points[k - 1];
    Ok(value(lower)
        + (target - key(lower)) * (value(upper) - value(lower)) / (key(upper) - key(lower)))
}

/// Citation count for percentile rank `pr_target` (percent) by linear
/// interpolation between the bracketing anchors.
pub fn interpolate_cc(anchors: &Anchors, pr_target: f64) -> Result<f64> {
    interpolate(&anchors.points, pr_target, true, "percentile rank")
}

/// Percentile rank for citation value `cc_target` by linear interpolation.
pub fn interpolate_pr(anchors: &Anchors, cc_target: f64) -> Result<f64> {
    interpolate(&anchors.points, cc_target, false, "citation value")
}
