//! Presentation data and SVG renderings: beamplots, bar graphs, Q-Q data,
//! and boxplot/histogram summaries.
//!
//! Each figure is built as a plot-data value first. The JSON form of that
//! value carries the exact library outputs; the SVG is drawn from it and
//! only shows numbers after two-decimal display rounding.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::corpus::{unit_score, PaperScores, ScoreStore};
use crate::display::fmt2;
use crate::error::{Error, Result};
use crate::estimation::CpVariant;
use crate::indicators::Indicator;

/// Beamplots with more papers than this are flagged as hard to read.
pub const DEFAULT_READABILITY_LIMIT: usize = 500;

pub const REFERENCE_LINE: f64 = 50.0;

const BEAM_TICKS: [f64; 11] = [
    0.0, 10.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 90.0, 100.0,
];
const BAR_TICKS: [f64; 6] = [0.0, 20.0, 40.0, 60.0, 80.0, 100.0];

// Built-in style.
const WIDTH: f64 = 800.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 760.0;
const TOP: f64 = 60.0;
const BEAM_SPACING: f64 = 48.0;
const POINT_RADIUS: f64 = 3.5;
const DIAMOND: f64 = 9.0;
const FAMILY: &str = "font-family=\"Helvetica, Arial, sans-serif\"";
const FONT: &str = "font-family=\"Helvetica, Arial, sans-serif\" font-size=\"12\"";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BeamPoint {
    pub paper_id: String,
    pub pr: f64,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BeamSeries {
    pub year: i32,
    pub papers: Vec<BeamPoint>,
    /// Fraction-weighted mean of the year's paper PRs.
    pub mwpr_f: f64,
}

/// Plot data for a percentile beamplot of one unit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BeamplotSpec {
    pub kind: &'static str,
    pub unit: String,
    pub variant: CpVariant,
    pub series: Vec<BeamSeries>,
    pub overall_mwpr_f: f64,
    pub reference: f64,
    pub axis_ticks: Vec<f64>,
    pub paper_count: usize,
    pub warning: Option<String>,
}

/// Rendered figure: plot data plus its SVG drawing.
#[derive(Debug, Clone)]
pub struct Figure<T> {
    pub data: T,
    pub svg: String,
}

impl<T: Serialize> Figure<T> {
    pub fn json(&self) -> serde_json::Value {
        serde_json::to_value(&self.data).expect("plot data serializes")
    }
}

/// Beamplot data: one beam per publication year with the unit's papers
/// placed by their wPR, the annual mwPR(F) markers, and the overall mwPR(F).
pub fn beamplot_spec(
    store: &ScoreStore,
    unit: &str,
    variant: CpVariant,
    readability_limit: usize,
) -> Result<BeamplotSpec> {
    let indicator = variant.indicator();
    let papers = store.unit_papers(unit)?;
    if papers.is_empty() {
        return Err(Error::NoPapers);
    }
    let mut by_year: BTreeMap<i32, Vec<(&PaperScores, f64)>> = BTreeMap::new();
    for &(p, fr) in &papers {
        by_year.entry(p.year).or_default().push((p, fr));
    }
    let series = by_year
        .into_iter()
        .map(|(year, list)| {
            let score = unit_score(unit, &list, indicator)?;
            let papers = list
                .iter()
                .map(|(p, fr)| BeamPoint {
                    paper_id: p.paper_id.clone(),
                    pr: p.wpr.get(indicator).expect("checked by unit_score"),
                    fraction: *fr,
                })
                .collect();
            Ok(BeamSeries {
                year,
                papers,
                mwpr_f: score.mwpr_f,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let overall = unit_score(unit, &papers, indicator)?;
    let warning = (papers.len() > readability_limit).then(|| {
        format!(
            "{} papers exceed the readability limit of {readability_limit}; the beamplot may be unreadable",
            papers.len()
        )
    });
    Ok(BeamplotSpec {
        kind: "beamplot",
        unit: unit.to_string(),
        variant,
        series,
        overall_mwpr_f: overall.mwpr_f,
        reference: REFERENCE_LINE,
        axis_ticks: BEAM_TICKS.to_vec(),
        paper_count: papers.len(),
        warning,
    })
}

pub fn emit_beamplot(
    store: &ScoreStore,
    unit: &str,
    variant: CpVariant,
) -> Result<Figure<BeamplotSpec>> {
    let data = beamplot_spec(store, unit, variant, DEFAULT_READABILITY_LIMIT)?;
    let svg = render_beamplot(&data);
    Ok(Figure { data, svg })
}

fn x_of(pr: f64) -> f64 {
    LEFT + (RIGHT - LEFT) * pr / 100.0
}

pub(crate) fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn svg_open(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"white\"/>"
    );
}

pub fn render_beamplot(spec: &BeamplotSpec) -> String {
    let beams = spec.series.len() as f64;
    let axis_y = TOP + beams * BEAM_SPACING;
    let height = axis_y + 60.0;
    let mut s = String::new();
    svg_open(&mut s, WIDTH, height);
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"28\" text-anchor=\"middle\" {FAMILY} font-size=\"15\">{} percentile ranks ({})</text>",
        WIDTH / 2.0,
        escape(&spec.unit),
        spec.variant
    );

    for (k, series) in spec.series.iter().enumerate() {
        let y = TOP + (k as f64 + 0.5) * BEAM_SPACING;
        let _ = writeln!(
            s,
            "<rect class=\"beam\" x=\"{LEFT}\" y=\"{}\" width=\"{}\" height=\"12\" fill=\"#e8e8e8\"/>",
            y - 6.0,
            RIGHT - LEFT
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" {FONT}>{}</text>",
            LEFT - 10.0,
            y + 4.0,
            series.year
        );
        for p in &series.papers {
            let _ = writeln!(
                s,
                "<circle class=\"paper\" cx=\"{:.3}\" cy=\"{y}\" r=\"{POINT_RADIUS}\" fill=\"#1f77b4\" fill-opacity=\"0.45\"><title>{}</title></circle>",
                x_of(p.pr),
                escape(&p.paper_id)
            );
        }
        let cx = x_of(series.mwpr_f);
        let _ = writeln!(
            s,
            "<polygon class=\"annual-mwpr\" points=\"{:.3},{} {:.3},{} {:.3},{} {:.3},{}\" fill=\"#d62728\"/>",
            cx,
            y - DIAMOND,
            cx + DIAMOND,
            y,
            cx,
            y + DIAMOND,
            cx - DIAMOND,
            y
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.3}\" y=\"{}\" text-anchor=\"middle\" {FAMILY} font-size=\"10\">{}</text>",
            cx,
            y - DIAMOND - 3.0,
            fmt2(series.mwpr_f)
        );
    }

    let ref_x = x_of(spec.reference);
    let _ = writeln!(
        s,
        "<line class=\"reference\" x1=\"{ref_x:.3}\" y1=\"{TOP}\" x2=\"{ref_x:.3}\" y2=\"{axis_y}\" stroke=\"#888888\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>"
    );
    let mx = x_of(spec.overall_mwpr_f);
    let _ = writeln!(
        s,
        "<line class=\"overall-mwpr\" x1=\"{mx:.3}\" y1=\"{TOP}\" x2=\"{mx:.3}\" y2=\"{axis_y}\" stroke=\"#d62728\" stroke-width=\"2\"/>"
    );
    let _ = writeln!(
        s,
        "<text x=\"{mx:.3}\" y=\"{}\" text-anchor=\"middle\" {FONT}>{}</text>",
        TOP - 6.0,
        fmt2(spec.overall_mwpr_f)
    );

    let _ = writeln!(
        s,
        "<line x1=\"{LEFT}\" y1=\"{axis_y}\" x2=\"{RIGHT}\" y2=\"{axis_y}\" stroke=\"black\"/>"
    );
    for &t in &spec.axis_ticks {
        let x = x_of(t);
        let _ = writeln!(
            s,
            "<line x1=\"{x:.3}\" y1=\"{axis_y}\" x2=\"{x:.3}\" y2=\"{}\" stroke=\"black\"/>",
            axis_y + 5.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{x:.3}\" y=\"{}\" text-anchor=\"middle\" {FONT}>{}</text>",
            axis_y + 18.0,
            fmt2(t)
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" {FONT}>Percentile rank</text>",
        (LEFT + RIGHT) / 2.0,
        axis_y + 40.0
    );
    s.push_str("</svg>\n");
    s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BarPair {
    pub unit: String,
    pub cp_in: f64,
    pub cp_ex: f64,
}

/// Plot data for paired CP-IN/CP-EX bars per unit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BarGraphSpec {
    pub kind: &'static str,
    pub unit: Vec<String>,
    pub variant: [CpVariant; 2],
    pub fractional: bool,
    pub series: Vec<BarPair>,
    pub axis_ticks: Vec<f64>,
}

pub fn bargraph_spec(
    store: &ScoreStore,
    units: &[String],
    fractional: bool,
) -> Result<BarGraphSpec> {
    if units.is_empty() {
        return Err(Error::Usage("at least one unit is required".into()));
    }
    let series = units
        .iter()
        .map(|u| {
            let cp_in = store.unit_report(u, Indicator::CpIn)?.score(fractional);
            let cp_ex = store.unit_report(u, Indicator::CpEx)?.score(fractional);
            Ok(BarPair {
                unit: u.clone(),
                cp_in,
                cp_ex,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BarGraphSpec {
        kind: "bargraph",
        unit: units.to_vec(),
        variant: [CpVariant::In, CpVariant::Ex],
        fractional,
        series,
        axis_ticks: BAR_TICKS.to_vec(),
    })
}

pub fn emit_bargraph(
    store: &ScoreStore,
    units: &[String],
    fractional: bool,
) -> Result<Figure<BarGraphSpec>> {
    let data = bargraph_spec(store, units, fractional)?;
    let svg = render_bargraph(&data);
    Ok(Figure { data, svg })
}

pub fn render_bargraph(spec: &BarGraphSpec) -> String {
    const PLOT_H: f64 = 300.0;
    const BAR_W: f64 = 28.0;
    const GROUP_W: f64 = 90.0;
    let width = (LEFT + GROUP_W * spec.series.len() as f64 + 120.0).max(400.0);
    let base = TOP + PLOT_H;
    let height = base + 70.0;
    let y_of = |v: f64| base - PLOT_H * v / 100.0;
    let mut s = String::new();
    svg_open(&mut s, width, height);
    let label = if spec.fractional { "mwPR(F)" } else { "mwPR" };
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"28\" text-anchor=\"middle\" {FAMILY} font-size=\"15\">{label} by unit (CP-IN and CP-EX)</text>",
        width / 2.0
    );
    let _ = writeln!(
        s,
        "<line x1=\"{LEFT}\" y1=\"{TOP}\" x2=\"{LEFT}\" y2=\"{base}\" stroke=\"black\"/>"
    );
    for &t in &spec.axis_ticks {
        let y = y_of(t);
        let _ = writeln!(
            s,
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{LEFT}\" y2=\"{y}\" stroke=\"black\"/>",
            LEFT - 5.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" {FONT}>{}</text>",
            LEFT - 8.0,
            y + 4.0,
            fmt2(t)
        );
    }
    let _ = writeln!(
        s,
        "<line x1=\"{LEFT}\" y1=\"{base}\" x2=\"{}\" y2=\"{base}\" stroke=\"black\"/>",
        width - 20.0
    );
    for (k, pair) in spec.series.iter().enumerate() {
        let gx = LEFT + 15.0 + k as f64 * GROUP_W;
        for (j, (v, color, class)) in [
            (pair.cp_in, "#1f77b4", "bar cp-in"),
            (pair.cp_ex, "#ff7f0e", "bar cp-ex"),
        ]
        .into_iter()
        .enumerate()
        {
            let x = gx + j as f64 * (BAR_W + 4.0);
            let y = y_of(v);
            let _ = writeln!(
                s,
                "<rect class=\"{class}\" x=\"{x}\" y=\"{y:.3}\" width=\"{BAR_W}\" height=\"{:.3}\" fill=\"{color}\"/>",
                base - y
            );
            let _ = writeln!(
                s,
                "<text x=\"{}\" y=\"{:.3}\" text-anchor=\"middle\" {FAMILY} font-size=\"10\">{}</text>",
                x + BAR_W / 2.0,
                y - 4.0,
                fmt2(v)
            );
        }
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" {FONT}>{}</text>",
            gx + BAR_W + 2.0,
            base + 18.0,
            escape(&pair.unit)
        );
    }
    let lx = width - 110.0;
    for (j, (name, color)) in [("CP-IN", "#1f77b4"), ("CP-EX", "#ff7f0e")]
        .into_iter()
        .enumerate()
    {
        let y = TOP + j as f64 * 18.0;
        let _ = writeln!(
            s,
            "<rect x=\"{lx}\" y=\"{y}\" width=\"12\" height=\"12\" fill=\"{color}\"/>"
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" {FONT}>{name}</text>",
            lx + 18.0,
            y + 10.0
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Q-Q plot data: the Hazen quantiles of papers at two category positions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QqData {
    pub kind: &'static str,
    pub unit: Option<String>,
    pub variant: Indicator,
    pub min_categories: usize,
    pub positions: [usize; 2],
    /// Each coordinate sorted ascending independently.
    pub series: Vec<(f64, f64)>,
}

/// Hazen quantiles of every paper assigned to at least `min_categories`
/// categories, taken at 1-based category positions `a` and `b`.
pub fn emit_qq_data(
    store: &ScoreStore,
    min_categories: usize,
    a: usize,
    b: usize,
) -> Result<QqData> {
    if a == 0 || b == 0 {
        return Err(Error::Usage("category positions start at 1".into()));
    }
    if !store.indicators.contains(&Indicator::Hazen) {
        return Err(Error::InvalidConfig(
            "Hazen values were not computed".into(),
        ));
    }
    let need = min_categories.max(a).max(b);
    let (mut xs, mut ys): (Vec<f64>, Vec<f64>) = store
        .papers
        .iter()
        .filter(|p| p.cells.len() >= need)
        .filter_map(|p| Some((p.cells[a - 1].values.hazen?, p.cells[b - 1].values.hazen?)))
        .unzip();
    if xs.is_empty() {
        return Err(Error::NoMatchingPapers);
    }
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    Ok(QqData {
        kind: "qq",
        unit: None,
        variant: Indicator::Hazen,
        min_categories,
        positions: [a, b],
        series: xs.into_iter().zip(ys).collect(),
    })
}

/// Boxplot statistics; quartiles by linear interpolation between order statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxStats {
    pub n: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub lower_fence: f64,
    pub upper_fence: f64,
    pub outliers: usize,
}

/// Quantile of sorted data with linear interpolation at position `(n - 1) p`.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn box_stats(values: &[f64]) -> Option<BoxStats> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let q1 = quantile_sorted(&v, 0.25);
    let q3 = quantile_sorted(&v, 0.75);
    let iqr = q3 - q1;
    let lower_fence = q1 - 1.5 * iqr;
    let upper_fence = q3 + 1.5 * iqr;
    Some(BoxStats {
        n: v.len(),
        min: v[0],
        q1,
        median: quantile_sorted(&v, 0.5),
        q3,
        max: v[v.len() - 1],
        lower_fence,
        upper_fence,
        outliers: v
            .iter()
            .filter(|&&x| x < lower_fence || x > upper_fence)
            .count(),
    })
}

/// Counts in ten bins of width 10 over `[0, 100]`; the last bin includes 100.
pub fn histogram(values: &[f64]) -> [u64; 10] {
    let mut bins = [0u64; 10];
    for &v in values {
        let k = ((v / 10.0).floor() as usize).min(9);
        bins[k] += 1;
    }
    bins
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YearSummary {
    pub year: i32,
    pub citations: Option<BoxStats>,
    pub cp_in: Option<BoxStats>,
    pub cp_ex: Option<BoxStats>,
    pub cp_in_histogram: [u64; 10],
    pub cp_ex_histogram: [u64; 10],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub kind: &'static str,
    pub unit: Option<String>,
    pub variant: [CpVariant; 2],
    pub series: Vec<YearSummary>,
}

/// Per-year distribution summaries of citation counts, CP-IN, and CP-EX over
/// all paper-cell occurrences.
pub fn summary(store: &ScoreStore) -> Result<Summary> {
    for ind in [Indicator::CpIn, Indicator::CpEx] {
        if !store.indicators.contains(&ind) {
            return Err(Error::InvalidConfig(format!(
                "{ind} values were not computed"
            )));
        }
    }
    // Citations, CP-IN, CP-EX per year.
    type Columns = (Vec<f64>, Vec<f64>, Vec<f64>);
    let mut by_year: BTreeMap<i32, Columns> = BTreeMap::new();
    for p in &store.papers {
        let entry = by_year.entry(p.year).or_default();
        for c in &p.cells {
            entry.0.push(p.citations as f64);
            entry.1.extend(c.values.cp_in);
            entry.2.extend(c.values.cp_ex);
        }
    }
    let series = by_year
        .into_iter()
        .map(|(year, (cc, cin, cex))| YearSummary {
            year,
            citations: box_stats(&cc),
            cp_in: box_stats(&cin),
            cp_ex: box_stats(&cex),
            cp_in_histogram: histogram(&cin),
            cp_ex_histogram: histogram(&cex),
        })
        .collect();
    Ok(Summary {
        kind: "summary",
        unit: None,
        variant: [CpVariant::In, CpVariant::Ex],
        series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantiles_on_small_sets() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile_sorted(&v, 0.5), 2.5);
        assert_eq!(quantile_sorted(&v, 0.25), 1.75);
        assert_eq!(quantile_sorted(&[7.0], 0.9), 7.0);
        let b = box_stats(&[1.0, 2.0, 3.0, 4.0, 100.0]).unwrap();
        assert_eq!((b.min, b.median, b.max), (1.0, 3.0, 100.0));
        assert_eq!(b.outliers, 1);
        assert!(box_stats(&[]).is_none());
    }

    #[test]
    fn histogram_edges() {
        let h = histogram(&[0.0, 9.999, 10.0, 55.0, 100.0, 99.0]);
        assert_eq!(h, [2, 1, 0, 0, 0, 1, 0, 0, 0, 2]);
    }

    #[test]
    fn escaping() {
        assert_eq!(escape("A&B <x> \"q\""), "A&amp;B &lt;x&gt; &quot;q&quot;");
    }
}
