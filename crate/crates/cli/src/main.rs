use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use citepr::aggregation::I3Config;
use citepr::estimation::DEFAULT_WIDTH;
use citepr::*;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

/// Citation percentile indicators for (year, category) cells.
#[derive(Parser)]
#[command(name = "citepr", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a corpus, compute all indicators, and persist the score store.
    Ingest {
        #[command(flatten)]
        input: InputArgs,
        /// Directory for the score store files.
        #[arg(long)]
        out: PathBuf,
        /// Indicators to compute (default: all).
        #[arg(long, value_delimiter = ',')]
        indicator: Vec<Indicator>,
    },
    /// Print the indicator table of one cell.
    Table {
        #[command(flatten)]
        input: InputArgs,
        /// Cell as YEAR:CATEGORY.
        #[arg(long)]
        cell: CellKey,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate a citation count for a percentile rank, or the reverse.
    Estimate {
        #[command(flatten)]
        input: InputArgs,
        /// Cell as YEAR:CATEGORY (optional when the corpus has one cell).
        #[arg(long)]
        cell: Option<CellKey>,
        #[arg(long, default_value = "cp-in")]
        variant: CpVariant,
        #[arg(long, value_enum, default_value_t = Method::IntervalEstimator)]
        method: Method,
        /// Percentile rank in percent.
        #[arg(long, conflicts_with = "cc", required_unless_present = "cc")]
        pr: Option<f64>,
        /// Citation value.
        #[arg(long)]
        cc: Option<f64>,
        /// Interval width for interval estimation.
        #[arg(long, default_value_t = DEFAULT_WIDTH)]
        width: f64,
    },
    /// Unit-level mean weighted percentile ranks, I3 values, or top-x% shares.
    Aggregate {
        #[command(flatten)]
        input: InputArgs,
        /// Percentile indicator feeding the per-paper weighted ranks.
        #[arg(long, default_value = "cp-ex")]
        indicator: Indicator,
        /// Restrict output to these units (default: all).
        #[arg(long, value_delimiter = ',')]
        units: Vec<String>,
        /// I3 class configuration, e.g. "I3(99-100, 90-10)".
        #[arg(long)]
        i3: Option<String>,
        /// Print fractional top-x% credits for --cell instead of unit scores.
        #[arg(long, requires = "cell")]
        top_x: Option<f64>,
        #[arg(long)]
        cell: Option<CellKey>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Percentile beamplot of one unit.
    Beamplot {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        unit: String,
        #[arg(long, default_value = "cp-ex")]
        variant: CpVariant,
        #[command(flatten)]
        figure: FigureArgs,
    },
    /// Paired CP-IN/CP-EX bars of unit mean weighted ranks.
    Bargraph {
        #[command(flatten)]
        input: InputArgs,
        /// Units to plot, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        units: Vec<String>,
        /// Weight papers by the unit's fraction (mwPR(F)).
        #[arg(long)]
        fractional: bool,
        #[command(flatten)]
        figure: FigureArgs,
    },
    /// Q-Q data of Hazen quantiles at two category positions.
    Qq {
        #[command(flatten)]
        input: InputArgs,
        /// Only papers with at least this many categories.
        #[arg(long, default_value_t = 2)]
        min_categories: usize,
        /// 1-based category positions to compare.
        #[arg(long, num_args = 2, value_names = ["A", "B"], default_values_t = [1, 2])]
        positions: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-year boxplot and histogram data of citations, CP-IN, and CP-EX.
    Summary {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Corpus file (CSV or JSON).
    #[arg(long)]
    input: PathBuf,
    /// Input format (default: from the file extension).
    #[arg(long, value_enum)]
    input_format: Option<InputKind>,
    /// Cells smaller than this are flagged in the store.
    #[arg(long, default_value_t = 0)]
    min_cell_size: u64,
}

#[derive(Args)]
struct FigureArgs {
    /// Write the SVG rendering here.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Write the plot-data JSON here (standard output if neither file is given).
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputKind {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    IntervalEstimator,
    Interp,
}

impl InputArgs {
    fn load(&self) -> Result<Corpus> {
        let format = match self.input_format {
            Some(InputKind::Csv) => InputFormat::Csv,
            Some(InputKind::Json) => InputFormat::Json,
            None => InputFormat::from_path(&self.input),
        };
        let corpus = ingest(&self.input, format)?;
        Ok(corpus.with_min_cell_size(self.min_cell_size))
    }

    fn store(&self, indicators: &[Indicator]) -> Result<ScoreStore> {
        Ok(compute_all(&self.load()?, indicators)?)
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn emit_json(out: Option<&Path>, value: &impl serde::Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(out, text.as_bytes())
}

fn emit_figure<T: serde::Serialize>(fig: &plots::Figure<T>, args: &FigureArgs) -> Result<()> {
    if let Some(path) = &args.svg {
        fs::write(path, &fig.svg).with_context(|| format!("writing {}", path.display()))?;
    }
    if args.json.is_some() || args.svg.is_none() {
        emit_json(args.json.as_deref(), &fig.data)?;
    }
    Ok(())
}

/// Shortest decimal form after rounding away floating-point noise.
fn trimmed(x: f64) -> String {
    let s = format!("{x:.10}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn pick_cell<'a>(corpus: &'a Corpus, cell: Option<&CellKey>) -> Result<&'a CitationDistribution> {
    match cell {
        Some(key) => Ok(corpus.cell(key)?),
        None if corpus.cells().len() == 1 => Ok(corpus.cells().values().next().unwrap()),
        None => Err(Error::Usage(format!(
            "the corpus has {} cells; choose one with --cell YEAR:CATEGORY",
            corpus.cells().len()
        ))
        .into()),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Ingest {
            input,
            out,
            indicator,
        } => {
            let selection = if indicator.is_empty() {
                Indicator::ALL.to_vec()
            } else {
                indicator
            };
            let corpus = input.load()?;
            let store = compute_all(&corpus, &selection)?;
            store.write_dir(&out)?;
            let flagged = store.cells.iter().filter(|c| c.flagged).count();
            if flagged > 0 {
                eprintln!(
                    "warning: {flagged} cells have fewer than {} papers",
                    input.min_cell_size
                );
            }
            println!(
                "{} papers, {} cells, store written to {}",
                store.papers.len(),
                store.cells.len(),
                out.display()
            );
        }
        Command::Table {
            input,
            cell,
            format,
            out,
        } => {
            let corpus = input.load()?;
            let table = indicator_table(corpus.cell(&cell)?);
            match format {
                OutputFormat::Csv => {
                    let mut buf = Vec::new();
                    table.write_csv(&mut buf)?;
                    emit(out.as_deref(), &buf)?;
                }
                OutputFormat::Json => emit_json(out.as_deref(), &table.to_json())?,
            }
        }
        Command::Estimate {
            input,
            cell,
            variant,
            method,
            pr,
            cc,
            width,
        } => {
            let corpus = input.load()?;
            let dist = pick_cell(&corpus, cell.as_ref())?;
            let value = match method {
                Method::IntervalEstimator => {
                    let b = IntervalEstimator::with_width(dist, variant, width)?;
                    match (pr, cc) {
                        (Some(p), _) => b.cc_for_pr(p / 100.0)?,
                        (None, Some(x)) => b.pr_for_cc(x)?,
                        (None, None) => unreachable!("clap requires --pr or --cc"),
                    }
                }
                Method::Interp => {
                    let anchors = Anchors::from_distribution(dist, variant);
                    match (pr, cc) {
                        (Some(p), _) => interpolate_cc(&anchors, p)?,
                        (None, Some(x)) => interpolate_pr(&anchors, x)?,
                        (None, None) => unreachable!("clap requires --pr or --cc"),
                    }
                }
            };
            println!("{}", trimmed(value));
        }
        Command::Aggregate {
            input,
            indicator,
            units,
            i3: i3_text,
            top_x,
            cell,
            format,
            out,
        } => {
            if let Some(x) = top_x {
                let corpus = input.load()?;
                let dist = corpus.cell(cell.as_ref().expect("clap requires --cell"))?;
                let share = top_x_fractional(dist, x)?;
                return match format {
                    OutputFormat::Json => emit_json(out.as_deref(), &share),
                    OutputFormat::Csv => {
                        let mut text = String::from("cc,count,credit\n");
                        for r in &share.rows {
                            text.push_str(&format!("{},{},{}\n", r.cc, r.count, r.credit));
                        }
                        text.push_str(&format!("total,{},{}\n", share.n, share.total));
                        emit(out.as_deref(), text.as_bytes())
                    }
                };
            }
            let config: Option<I3Config> = i3_text.as_deref().map(str::parse).transpose()?;
            let store = input.store(&[indicator])?;
            let units: Vec<String> = if units.is_empty() {
                store.units().map(str::to_string).collect()
            } else {
                units
            };
            let mut rows = Vec::new();
            for unit in &units {
                let score = store.unit_report(unit, indicator)?;
                let i3_value = match &config {
                    Some(c) => {
                        let prs: Vec<f64> = store
                            .unit_papers(unit)?
                            .iter()
                            .filter_map(|(p, _)| p.wpr.get(indicator))
                            .collect();
                        Some(i3(&prs, c)?)
                    }
                    None => None,
                };
                rows.push((score, i3_value));
            }
            match format {
                OutputFormat::Json => {
                    let list: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(s, i)| {
                            serde_json::json!({
                                "unit": s.unit,
                                "indicator": indicator,
                                "papers": s.papers,
                                "mwpr": s.mwpr,
                                "mwpr_f": s.mwpr_f,
                                "fraction_sum": s.fraction_sum,
                                "i3": i,
                            })
                        })
                        .collect();
                    emit_json(out.as_deref(), &list)?;
                }
                OutputFormat::Csv => {
                    let mut text = String::from("unit,indicator,papers,mwpr,mwpr_f,fraction_sum");
                    if config.is_some() {
                        text.push_str(",i3");
                    }
                    text.push('\n');
                    for (s, i) in &rows {
                        text.push_str(&format!(
                            "{},{},{},{},{},{}",
                            s.unit, indicator, s.papers, s.mwpr, s.mwpr_f, s.fraction_sum
                        ));
                        if let Some(v) = i {
                            text.push_str(&format!(",{v}"));
                        }
                        text.push('\n');
                    }
                    emit(out.as_deref(), text.as_bytes())?;
                }
            }
        }
        Command::Beamplot {
            input,
            unit,
            variant,
            figure,
        } => {
            let store = input.store(&[variant.indicator()])?;
            let fig = emit_beamplot(&store, &unit, variant)?;
            if let Some(w) = &fig.data.warning {
                eprintln!("warning: {w}");
            }
            emit_figure(&fig, &figure)?;
        }
        Command::Bargraph {
            input,
            units,
            fractional,
            figure,
        } => {
            let store = input.store(&[Indicator::CpIn, Indicator::CpEx])?;
            let fig = emit_bargraph(&store, &units, fractional)?;
            emit_figure(&fig, &figure)?;
        }
        Command::Qq {
            input,
            min_categories,
            positions,
            out,
        } => {
            let store = input.store(&[Indicator::Hazen])?;
            let data = emit_qq_data(&store, min_categories, positions[0], positions[1])?;
            emit_json(out.as_deref(), &data)?;
        }
        Command::Summary { input, out } => {
            let store = input.store(&[Indicator::CpIn, Indicator::CpEx])?;
            emit_json(out.as_deref(), &summary(&store)?)?;
        }
    }
    Ok(())
}

fn subcommand_name(args: &[String]) -> Option<String> {
    args.iter().skip(1).find(|a| !a.starts_with('-')).cloned()
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            match err.downcast_ref::<Error>() {
                Some(Error::Usage(_)) => {
                    let mut cmd = Cli::command();
                    if let Some(sub) =
                        subcommand_name(&args).and_then(|n| cmd.find_subcommand_mut(&n).cloned())
                    {
                        let mut sub = sub;
                        eprintln!("\n{}", sub.render_help());
                    }
                    ExitCode::from(1)
                }
                _ => ExitCode::from(2),
            }
        }
    }
}
