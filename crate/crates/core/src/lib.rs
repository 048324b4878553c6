//! Citation percentile indicators.
//!
//! Per-cell citation distributions, rank-based percentile indicators,
//! interval-based estimation, paper and unit aggregation, corpus batch
//! processing, and plot data.

pub mod aggregation;
pub mod corpus;
pub mod display;
pub mod distribution;
pub mod error;
pub mod estimation;
pub mod indicators;
pub mod plots;

pub use aggregation::{
    i3, incites_min_rule, mean_weighted_pr, mean_weighted_pr_fractional, parse_i3_notation,
    print_i3_notation, top_x_fractional, weighted_pr, CategoryPr, I3Class, I3Config, PaperScore,
    TopCredit, TopShare, UnitScore,
};
pub use corpus::{compute_all, ingest, ingest_csv, Corpus, InputFormat, ScoreStore};
pub use display::{fmt2, round2};
pub use distribution::{
    build_distribution, CellKey, CitationDistribution, Entry, PublicationRecord, UnitShare,
};
pub use error::{Error, Result};
pub use estimation::{
    cc_for_pr, expand_intervals, interpolate_cc, interpolate_pr, pr_for_cc, Anchors, CpVariant,
    ExpandedIntervalTable, IntervalEstimator,
};
pub use indicators::{
    cp_ex, cp_in, hazen_pp, incites_percentile, indicator_table, p100, p100_prime, Indicator,
    IndicatorTable, IndicatorValues,
};
pub use plots::{emit_bargraph, emit_beamplot, emit_qq_data, summary};
