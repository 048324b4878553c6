use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::distribution::CellKey;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("a citation distribution needs at least one paper")]
    EmptyDistribution,

    #[error("citation count {0} does not occur in the distribution")]
    UnknownCitationCount(u64),

    #[error("scale is degenerate: the distribution has a single unique citation count")]
    DegenerateScale,

    #[error("{0}")]
    OutOfEstimableRange(String),

    #[error("{0}")]
    OutOfRange(String),

    #[error("invalid anchors: {0}")]
    InvalidAnchors(String),

    #[error("invalid interval width {0}; must be finite and positive")]
    InvalidWidth(f64),

    #[error("no subject categories given")]
    NoCategories,

    #[error("category {0:?} listed twice")]
    DuplicateCategory(String),

    #[error("no papers given")]
    NoPapers,

    #[error("invalid fraction {0}; must lie in (0, 1]")]
    InvalidFraction(f64),

    #[error("invalid percentile {0}")]
    InvalidPercentile(f64),

    #[error("invalid I3 configuration: {0}")]
    InvalidConfig(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("I3 thresholds must be strictly decreasing ({previous} is followed by {next})")]
    NonDecreasingThresholds { previous: f64, next: f64 },

    #[error("paper {paper_id:?} does not belong to cell {cell}")]
    RecordNotInCell { paper_id: String, cell: CellKey },

    #[error("invalid cell key {0:?}; expected YEAR:CATEGORY")]
    InvalidCellKey(String),

    #[error("unknown cell {0}")]
    UnknownCell(CellKey),

    #[error("unknown unit {0:?}")]
    UnknownUnit(String),

    #[error("unknown indicator {0:?}")]
    UnknownIndicator(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("no papers match the filter")]
    NoMatchingPapers,

    #[error("{}", .0)]
    Ingest(IngestErrors),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Problem with a single input record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecordErrorKind {
    Parse(String),
    DuplicateId(String),
    InvalidCitationCount(String),
    EmptyCategories,
    DuplicateCategory(String),
    InvalidFraction(String),
}

impl fmt::Display for RecordErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Parse(msg) => write!(f, "parse error: {msg}"),
            Self::DuplicateId(id) => write!(f, "duplicate paper_id {id:?}"),
            Self::InvalidCitationCount(v) => write!(f, "invalid citation count {v:?}"),
            Self::EmptyCategories => write!(f, "no subject categories"),
            Self::DuplicateCategory(c) => write!(f, "category {c:?} listed twice"),
            Self::InvalidFraction(v) => write!(f, "invalid unit fraction {v:?}"),
        }
    }
}

/// A record-level error with the 1-based input line it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordError {
    pub line: u64,
    pub kind: RecordErrorKind,
}

impl fmt::Display for RecordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.kind)
    }
}

/// All record errors collected during one ingestion pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngestErrors(pub Vec<RecordError>);

impl fmt::Display for IngestErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} invalid record(s)", self.0.len())?;
        for err in self.0.iter().take(20) {
            write!(f, "\n  {err}")?;
        }
        if self.0.len() > 20 {
            write!(f, "\n  ... and {} more", self.0.len() - 20)?;
        }
        Ok(())
    }
}
