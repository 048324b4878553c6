//! Corpus ingestion, per-cell computation, and the persisted score store.
//!
//! A paper listed in `k` subject categories contributes to `k` cells. Scores
//! are computed per cell independently (in parallel) and assembled in a fixed
//! order: cells by year then category, papers by paper id.

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::aggregation::{
    mean_weighted_pr, mean_weighted_pr_fractional, weighted_pr, CategoryPr, PaperScore, UnitScore,
};
use crate::distribution::{CellKey, CitationDistribution, PublicationRecord, UnitShare};
use crate::error::{Error, IngestErrors, RecordError, RecordErrorKind, Result};
use crate::indicators::{fmt_opt, indicator_table, Indicator, IndicatorTable, IndicatorValues};

pub const INPUT_COLUMNS: [&str; 5] = ["paper_id", "year", "citations", "categories", "units"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    /// `paper_id,year,citations,categories,units` with a header row.
    Csv,
    /// A JSON array of records.
    Json,
}

impl InputFormat {
    /// Guesses from the file extension; CSV unless it ends in `.json`.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => InputFormat::Json,
            _ => InputFormat::Csv,
        }
    }
}

/// Validated records grouped into (year, category) cells.
#[derive(Debug, Clone)]
pub struct Corpus {
    records: Vec<PublicationRecord>,
    index: HashMap<String, usize>,
    cells: BTreeMap<CellKey, CitationDistribution>,
    min_cell_size: u64,
}

impl Corpus {
    pub fn from_records(mut records: Vec<PublicationRecord>) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::NoPapers);
        }
        records.sort_by(|a, b| a.paper_id.cmp(&b.paper_id));
        let dups: Vec<RecordError> = records
            .windows(2)
            .filter(|w| w[0].paper_id == w[1].paper_id)
            .map(|w| RecordError {
                line: 0,
                kind: RecordErrorKind::DuplicateId(w[1].paper_id.clone()),
            })
            .collect();
        if !dups.is_empty() {
            return Err(Error::Ingest(IngestErrors(dups)));
        }
        let index = records
            .iter()
            .enumerate()
            .map(|(k, r)| (r.paper_id.clone(), k))
            .collect();

        let mut grouped: BTreeMap<CellKey, Vec<u64>> = BTreeMap::new();
        for r in &records {
            for key in r.cells() {
                grouped.entry(key).or_default().push(r.citations);
            }
        }
        let cells = grouped
            .into_par_iter()
            .map(|(key, ccs)| {
                let dist = CitationDistribution::from_citations(key.clone(), ccs)?;
                Ok((key, dist))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self {
            records,
            index,
            cells,
            min_cell_size: 1,
        })
    }

    /// Cells with fewer papers are still computed but flagged.
    pub fn with_min_cell_size(mut self, min: u64) -> Self {
        self.min_cell_size = min;
        self
    }

    pub fn min_cell_size(&self) -> u64 {
        self.min_cell_size
    }

    /// Records sorted by paper id.
    pub fn records(&self) -> &[PublicationRecord] {
        &self.records
    }

    pub fn record(&self, paper_id: &str) -> Option<&PublicationRecord> {
        self.index.get(paper_id).map(|&k| &self.records[k])
    }

    pub fn cells(&self) -> &BTreeMap<CellKey, CitationDistribution> {
        &self.cells
    }

    pub fn cell(&self, key: &CellKey) -> Result<&CitationDistribution> {
        self.cells
            .get(key)
            .ok_or_else(|| Error::UnknownCell(key.clone()))
    }

    /// Sum of cell sizes; equals the sum over papers of their category counts.
    pub fn cell_occurrences(&self) -> u64 {
        self.cells.values().map(|d| d.n()).sum()
    }

    /// SHA-256 over a canonical rendering of the records.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        for r in &self.records {
            h.update(r.paper_id.as_bytes());
            h.update(format!("\t{}\t{}\t", r.year, r.citations).as_bytes());
            h.update(r.categories.join(";").as_bytes());
            h.update(b"\t");
            for (k, u) in r.units.iter().enumerate() {
                if k > 0 {
                    h.update(b";");
                }
                h.update(format!("{}:{}", u.unit, u.fraction).as_bytes());
            }
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }
}

/// Reads and validates a corpus file.
pub fn ingest(path: &Path, format: InputFormat) -> Result<Corpus> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let reader = BufReader::new(file);
    match format {
        InputFormat::Csv => ingest_csv(reader),
        InputFormat::Json => {
            let raw: Vec<PublicationRecord> = serde_json::from_reader(reader)?;
            let mut errors = Vec::new();
            let mut records = Vec::with_capacity(raw.len());
            for (k, r) in raw.into_iter().enumerate() {
                let line = k as u64 + 1;
                match PublicationRecord::new(r.paper_id, r.year, r.citations, r.categories, r.units)
                {
                    Ok(rec) => records.push(rec),
                    Err(e) => errors.push(RecordError {
                        line,
                        kind: record_error_kind(e),
                    }),
                }
            }
            finish(records, errors)
        }
    }
}

fn record_error_kind(e: Error) -> RecordErrorKind {
    match e {
        Error::NoCategories => RecordErrorKind::EmptyCategories,
        Error::DuplicateCategory(c) => RecordErrorKind::DuplicateCategory(c),
        Error::InvalidFraction(f) => RecordErrorKind::InvalidFraction(f.to_string()),
        other => RecordErrorKind::Parse(other.to_string()),
    }
}

fn finish(records: Vec<PublicationRecord>, mut errors: Vec<RecordError>) -> Result<Corpus> {
    if !errors.is_empty() {
        errors.sort_by_key(|e| e.line);
        return Err(Error::Ingest(IngestErrors(errors)));
    }
    Corpus::from_records(records)
}

/// Parses the CSV input schema. All record errors are collected with their
/// line numbers before failing.
pub fn ingest_csv<R: Read>(reader: R) -> Result<Corpus> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let mut col = [usize::MAX; 5];
    for (slot, name) in col.iter_mut().zip(INPUT_COLUMNS) {
        *slot = headers
            .iter()
            .position(|h| h.trim_start_matches('\u{feff}') == name)
            .ok_or_else(|| {
                Error::Ingest(IngestErrors(vec![RecordError {
                    line: 1,
                    kind: RecordErrorKind::Parse(format!("missing column {name:?}")),
                }]))
            })?;
    }

    let mut records = Vec::new();
    let mut errors = Vec::new();
    let mut first_line: HashMap<String, u64> = HashMap::new();
    let mut row = csv::StringRecord::new();
    loop {
        match rdr.read_record(&mut row) {
            Ok(false) => break,
            Ok(true) => {}
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                errors.push(RecordError {
                    line,
                    kind: RecordErrorKind::Parse(e.to_string()),
                });
                continue;
            }
        }
        let line = row.position().map_or(0, |p| p.line());
        let field = |k: usize| row.get(col[k]).unwrap_or("");
        match parse_row(field(0), field(1), field(2), field(3), field(4)) {
            Ok(rec) => {
                if first_line.insert(rec.paper_id.clone(), line).is_some() {
                    errors.push(RecordError {
                        line,
                        kind: RecordErrorKind::DuplicateId(rec.paper_id),
                    });
                } else {
                    records.push(rec);
                }
            }
            Err(kind) => errors.push(RecordError { line, kind }),
        }
    }
    finish(records, errors)
}

fn parse_row(
    id: &str,
    year: &str,
    citations: &str,
    categories: &str,
    units: &str,
) -> std::result::Result<PublicationRecord, RecordErrorKind> {
    if id.is_empty() {
        return Err(RecordErrorKind::Parse("empty paper_id".into()));
    }
    let year: i32 = year
        .parse()
        .map_err(|_| RecordErrorKind::Parse(format!("invalid year {year:?}")))?;
    if citations.is_empty() || !citations.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RecordErrorKind::InvalidCitationCount(citations.to_string()));
    }
    let citations: u64 = citations
        .parse()
        .map_err(|_| RecordErrorKind::InvalidCitationCount(citations.to_string()))?;

    let categories: Vec<String> = categories
        .split(';')
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .map(str::to_string)
        .collect();
    let units = parse_units(units)?;
    PublicationRecord::new(id, year, citations, categories, units).map_err(record_error_kind)
}

/// `unit` or `unit:fraction` tokens separated by `;`. Units without an
/// explicit fraction get `1 / (number of units)`.
pub fn parse_units(field: &str) -> std::result::Result<Vec<UnitShare>, RecordErrorKind> {
    let tokens: Vec<&str> = field
        .split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect();
    let default = 1.0 / tokens.len().max(1) as f64;
    tokens
        .iter()
        .map(|t| match t.rsplit_once(':') {
            Some((unit, fr)) => {
                let fraction: f64 = fr
                    .trim()
                    .parse()
                    .map_err(|_| RecordErrorKind::InvalidFraction(fr.to_string()))?;
                if !(fraction > 0.0 && fraction <= 1.0) {
                    return Err(RecordErrorKind::InvalidFraction(fr.to_string()));
                }
                Ok(UnitShare {
                    unit: unit.trim().to_string(),
                    fraction,
                })
            }
            None => Ok(UnitShare {
                unit: t.to_string(),
                fraction: default,
            }),
        })
        .collect()
}

/// Writes records in the CSV input schema.
pub fn write_records_csv<W: Write>(records: &[PublicationRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(INPUT_COLUMNS)?;
    for r in records {
        let units: Vec<String> = r
            .units
            .iter()
            .map(|u| format!("{}:{}", u.unit, u.fraction))
            .collect();
        w.write_record([
            r.paper_id.clone(),
            r.year.to_string(),
            r.citations.to_string(),
            r.categories.join(";"),
            units.join(";"),
        ])?;
    }
    w.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

/// Size and status of one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub year: i32,
    pub category: String,
    pub n: u64,
    pub unique: u64,
    /// Fewer papers than the configured minimum cell size.
    pub flagged: bool,
    /// Only one unique citation count: P100 and P100′ are undefined.
    pub degenerate: bool,
}

/// A paper's indicator values in one of its cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellScore {
    pub category: String,
    pub n: u64,
    pub values: IndicatorValues,
}

/// Everything stored for one paper.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperScores {
    pub paper_id: String,
    pub year: i32,
    pub citations: u64,
    pub units: Vec<UnitShare>,
    /// In the order the categories were listed for the paper.
    pub cells: Vec<CellScore>,
    /// Size-weighted mean over cells, per indicator.
    pub wpr: IndicatorValues,
}

impl PaperScores {
    /// The paper's per-category ranks and wPR for one indicator.
    pub fn paper_score(&self, indicator: Indicator) -> Result<PaperScore> {
        let categories = self
            .cells
            .iter()
            .map(|c| {
                let pr = c.values.get(indicator).ok_or(Error::DegenerateScale)?;
                Ok(CategoryPr {
                    category: c.category.clone(),
                    year: self.year,
                    pr,
                    n: c.n,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PaperScore::new(self.paper_id.clone(), categories)
    }

    pub fn fraction_for(&self, unit: &str) -> Option<f64> {
        self.units
            .iter()
            .filter(|u| u.unit == unit)
            .map(|u| u.fraction)
            .reduce(|a, b| a + b)
            .map(|f| f.min(1.0))
    }
}

/// Computed indicator tables, per-paper scores, and per-unit scores.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreStore {
    pub corpus_hash: String,
    pub min_cell_size: u64,
    pub indicators: Vec<Indicator>,
    pub cells: Vec<CellSummary>,
    pub tables: Vec<IndicatorTable>,
    /// Sorted by paper id.
    pub papers: Vec<PaperScores>,
    /// Paper indices per unit, ascending.
    unit_papers: BTreeMap<String, Vec<usize>>,
}

/// Computes every cell's table and every paper's scores for the selected indicators.
pub fn compute_all(corpus: &Corpus, indicators: &[Indicator]) -> Result<ScoreStore> {
    let mut selection: Vec<Indicator> = indicators.to_vec();
    selection.sort();
    selection.dedup();
    if selection.is_empty() {
        return Err(Error::InvalidConfig("no indicators selected".into()));
    }

    let keys: Vec<&CellKey> = corpus.cells.keys().collect();
    let tables: Vec<IndicatorTable> = keys
        .par_iter()
        .map(|k| indicator_table(&corpus.cells[*k]))
        .collect();
    let table_index: HashMap<&CellKey, usize> =
        keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();

    let cells = corpus
        .cells
        .values()
        .map(|d| CellSummary {
            year: d.key().year,
            category: d.key().category.clone(),
            n: d.n(),
            unique: d.unique_len() as u64,
            flagged: d.n() < corpus.min_cell_size,
            degenerate: d.unique_len() < 2,
        })
        .collect();

    let papers: Vec<PaperScores> = corpus
        .records
        .par_iter()
        .map(|r| {
            let cells: Vec<CellScore> = r
                .cells()
                .map(|key| {
                    let table = &tables[table_index[&key]];
                    let n = corpus.cells[&key].n();
                    let row = table
                        .row(r.citations)
                        .expect("paper occurs in its own cell");
                    let mut values = IndicatorValues::default();
                    for &ind in &selection {
                        let v = match ind {
                            Indicator::Hazen => Some(row.hazen),
                            Indicator::Incites => Some(row.incites),
                            Indicator::P100 => row.p100,
                            Indicator::P100Prime => row.p100_prime,
                            Indicator::CpIn => Some(row.cp_in),
                            Indicator::CpEx => Some(row.cp_ex),
                        };
                        values.set(ind, v);
                    }
                    CellScore {
                        category: key.category,
                        n,
                        values,
                    }
                })
                .collect();
            let mut wpr = IndicatorValues::default();
            for &ind in &selection {
                let pairs: Option<Vec<(f64, u64)>> = cells
                    .iter()
                    .map(|c| c.values.get(ind).map(|v| (v, c.n)))
                    .collect();
                wpr.set(ind, pairs.and_then(|p| weighted_pr(&p).ok()));
            }
            PaperScores {
                paper_id: r.paper_id.clone(),
                year: r.year,
                citations: r.citations,
                units: r.units.clone(),
                cells,
                wpr,
            }
        })
        .collect();

    let mut unit_papers: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (k, p) in papers.iter().enumerate() {
        for u in &p.units {
            let list = unit_papers.entry(u.unit.clone()).or_default();
            if list.last() != Some(&k) {
                list.push(k);
            }
        }
    }

    Ok(ScoreStore {
        corpus_hash: corpus.hash(),
        min_cell_size: corpus.min_cell_size,
        indicators: selection,
        cells,
        tables,
        papers,
        unit_papers,
    })
}

impl ScoreStore {
    pub fn paper(&self, paper_id: &str) -> Option<&PaperScores> {
        self.papers
            .binary_search_by(|p| p.paper_id.as_str().cmp(paper_id))
            .ok()
            .map(|k| &self.papers[k])
    }

    pub fn table(&self, key: &CellKey) -> Option<&IndicatorTable> {
        self.tables
            .binary_search_by(|t| t.key.cmp(key))
            .ok()
            .map(|k| &self.tables[k])
    }

    pub fn units(&self) -> impl Iterator<Item = &str> {
        self.unit_papers.keys().map(String::as_str)
    }

    /// Papers of a unit with the unit's fraction of each.
    pub fn unit_papers(&self, unit: &str) -> Result<Vec<(&PaperScores, f64)>> {
        let idx = self
            .unit_papers
            .get(unit)
            .ok_or_else(|| Error::UnknownUnit(unit.to_string()))?;
        Ok(idx
            .iter()
            .map(|&k| {
                let p = &self.papers[k];
                (p, p.fraction_for(unit).unwrap_or(1.0))
            })
            .collect())
    }

    /// mwPR and mwPR(F) of a unit for one indicator.
    pub fn unit_report(&self, unit: &str, indicator: Indicator) -> Result<UnitScore> {
        let papers = self.unit_papers(unit)?;
        unit_score(unit, &papers, indicator)
    }

    /// Unit scores for every unit and every selected indicator for which all
    /// of the unit's papers have a defined wPR.
    pub fn unit_scores(&self) -> Vec<(Indicator, UnitScore)> {
        let mut out = Vec::new();
        for unit in self.unit_papers.keys() {
            for &ind in &self.indicators {
                if let Ok(score) = self.unit_report(unit, ind) {
                    out.push((ind, score));
                }
            }
        }
        out
    }

    /// Writes the store as CSV files plus a JSON manifest into `dir`.
    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let create = |name: &str| -> Result<BufWriter<File>> {
            let path = dir.join(name);
            File::create(&path)
                .map(BufWriter::new)
                .map_err(|source| Error::Io { path, source })
        };
        self.write_cells(create(CELLS_FILE)?)?;
        self.write_tables(create(TABLES_FILE)?)?;
        self.write_paper_cells(create(PAPER_CELLS_FILE)?)?;
        self.write_paper_scores(create(PAPER_SCORES_FILE)?)?;
        self.write_unit_scores(create(UNIT_SCORES_FILE)?)?;

        let manifest = Manifest {
            format_version: 1,
            corpus_sha256: self.corpus_hash.clone(),
            papers: self.papers.len() as u64,
            cells: self.cells.len() as u64,
            cell_occurrences: self.cells.iter().map(|c| c.n).sum(),
            min_cell_size: self.min_cell_size,
            indicators: self
                .indicators
                .iter()
                .map(|i| i.name().to_string())
                .collect(),
            files: [
                CELLS_FILE,
                TABLES_FILE,
                PAPER_CELLS_FILE,
                PAPER_SCORES_FILE,
                UNIT_SCORES_FILE,
            ]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        };
        let path = dir.join(MANIFEST_FILE);
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        fs::write(&path, text).map_err(|source| Error::Io { path, source })
    }

    pub fn write_cells<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["year", "category", "n", "unique", "flagged", "degenerate"])?;
        for c in &self.cells {
            w.write_record([
                c.year.to_string(),
                c.category.clone(),
                c.n.to_string(),
                c.unique.to_string(),
                c.flagged.to_string(),
                c.degenerate.to_string(),
            ])?;
        }
        flush(w)
    }

    pub fn write_tables<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["year", "category"];
        header.extend(crate::indicators::TABLE_COLUMNS);
        w.write_record(&header)?;
        for t in &self.tables {
            for r in &t.rows {
                let mut record = vec![t.key.year.to_string(), t.key.category.clone()];
                record.extend(r.fields());
                w.write_record(&record)?;
            }
        }
        flush(w)
    }

    /// One row per paper and cell, sorted by year, category, paper id.
    pub fn write_paper_cells<W: Write>(&self, out: W) -> Result<()> {
        let mut rows: Vec<(&PaperScores, usize)> = self
            .papers
            .iter()
            .flat_map(|p| (0..p.cells.len()).map(move |k| (p, k)))
            .collect();
        rows.sort_by(|a, b| {
            (a.0.year, &a.0.cells[a.1].category, &a.0.paper_id).cmp(&(
                b.0.year,
                &b.0.cells[b.1].category,
                &b.0.paper_id,
            ))
        });
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["year", "category", "paper_id", "position", "citations", "n"];
        header.extend(self.indicators.iter().map(|i| i.column()));
        w.write_record(&header)?;
        for (p, k) in rows {
            let c = &p.cells[k];
            let mut rec = vec![
                p.year.to_string(),
                c.category.clone(),
                p.paper_id.clone(),
                (k + 1).to_string(),
                p.citations.to_string(),
                c.n.to_string(),
            ];
            rec.extend(self.indicators.iter().map(|&i| fmt_opt(c.values.get(i))));
            w.write_record(&rec)?;
        }
        flush(w)
    }

    /// One row per paper with its wPR per indicator, sorted by year then paper id.
    pub fn write_paper_scores<W: Write>(&self, out: W) -> Result<()> {
        let mut order: Vec<&PaperScores> = self.papers.iter().collect();
        order.sort_by(|a, b| (a.year, &a.paper_id).cmp(&(b.year, &b.paper_id)));
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec![
            "year".to_string(),
            "paper_id".to_string(),
            "citations".to_string(),
            "categories".to_string(),
            "units".to_string(),
        ];
        header.extend(
            self.indicators
                .iter()
                .map(|i| format!("wpr_{}", i.column())),
        );
        w.write_record(&header)?;
        for p in order {
            let units: Vec<String> = p
                .units
                .iter()
                .map(|u| format!("{}:{}", u.unit, u.fraction))
                .collect();
            let cats: Vec<&str> = p.cells.iter().map(|c| c.category.as_str()).collect();
            let mut rec = vec![
                p.year.to_string(),
                p.paper_id.clone(),
                p.citations.to_string(),
                cats.join(";"),
                units.join(";"),
            ];
            rec.extend(self.indicators.iter().map(|&i| fmt_opt(p.wpr.get(i))));
            w.write_record(&rec)?;
        }
        flush(w)
    }

    pub fn write_unit_scores<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "unit",
            "indicator",
            "papers",
            "fraction_sum",
            "mwpr",
            "mwpr_f",
        ])?;
        for (ind, s) in self.unit_scores() {
            w.write_record([
                s.unit.clone(),
                ind.name().to_string(),
                s.papers.to_string(),
                s.fraction_sum.to_string(),
                s.mwpr.to_string(),
                s.mwpr_f.to_string(),
            ])?;
        }
        flush(w)
    }
}

fn flush<W: Write>(mut w: csv::Writer<W>) -> Result<()> {
    w.flush().map_err(|e| Error::Csv(e.into()))
}

/// mwPR (unweighted) and mwPR(F) (fraction-weighted) over `(paper, fraction)` pairs.
pub fn unit_score(
    unit: &str,
    papers: &[(&PaperScores, f64)],
    indicator: Indicator,
) -> Result<UnitScore> {
    let pairs = papers
        .iter()
        .map(|(p, fr)| {
            p.wpr
                .get(indicator)
                .map(|w| (w, *fr))
                .ok_or(Error::DegenerateScale)
        })
        .collect::<Result<Vec<_>>>()?;
    let wprs: Vec<f64> = pairs.iter().map(|(w, _)| *w).collect();
    Ok(UnitScore {
        unit: unit.to_string(),
        papers: pairs.len() as u64,
        mwpr: mean_weighted_pr(&wprs)?,
        mwpr_f: mean_weighted_pr_fractional(&pairs)?,
        fraction_sum: pairs.iter().map(|(_, fr)| fr).sum(),
    })
}

pub const CELLS_FILE: &str = "cells.csv";
pub const TABLES_FILE: &str = "tables.csv";
pub const PAPER_CELLS_FILE: &str = "paper_cells.csv";
pub const PAPER_SCORES_FILE: &str = "paper_scores.csv";
pub const UNIT_SCORES_FILE: &str = "unit_scores.csv";
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Serialize, Deserialize)]
struct Manifest {
    format_version: u32,
    corpus_sha256: String,
    papers: u64,
    cells: u64,
    cell_occurrences: u64,
    min_cell_size: u64,
    indicators: Vec<String>,
    files: Vec<String>,
}

/// Every file written by [`ScoreStore::write_dir`], in a fixed order.
pub fn store_files(dir: &Path) -> Vec<PathBuf> {
    [
        CELLS_FILE,
        TABLES_FILE,
        PAPER_CELLS_FILE,
        PAPER_SCORES_FILE,
        UNIT_SCORES_FILE,
        MANIFEST_FILE,
    ]
    .iter()
    .map(|f| dir.join(f))
    .collect()
}
