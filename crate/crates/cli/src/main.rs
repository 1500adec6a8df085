//! `diverse` — diversity indicators for category portfolios.
//!
//! Subcommands cover the full workflow: `cosine` builds a similarity matrix
//! from an occurrence matrix, `compute` scores every portfolio column
//! against a similarity or disparity matrix, `correlate` relates the
//! resulting indicators, and `plot` draws them as an SVG dot chart.

use std::path::PathBuf;
use std::process::exit;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use diverse::{
    batch_indicators, correlation_table, load_disparity, load_labels, load_matrix,
    load_similarity, read_output, write_atomic, write_output, write_similarity_csv, Error,
    OccurrenceMatrix, DEFAULT_INDICATORS,
};

mod plot;

#[derive(Parser)]
#[command(
    name = "diverse",
    version,
    about = "Diversity indicators (variety, balance, disparity) for category portfolios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score every column of a count matrix and write the indicator table
    Compute {
        /// Headerless CSV count matrix: categories as rows, portfolios as columns
        #[arg(long)]
        matrix: PathBuf,
        /// Square similarity matrix over the categories (or disparity, with --disparity)
        #[arg(long)]
        sim: PathBuf,
        /// Treat the --sim file as a ready-made disparity matrix (zero diagonal)
        #[arg(long)]
        disparity: bool,
        /// Sidecar file naming each column, one label per line
        #[arg(long)]
        labels: Option<PathBuf>,
        /// Symmetry and range tolerance for matrix validation
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a cosine similarity matrix from an occurrence matrix
    Cosine {
        /// Headerless CSV occurrence matrix; similarity is taken between columns
        #[arg(long)]
        occurrence: PathBuf,
        /// Output CSV path (headerless square matrix)
        #[arg(long)]
        out: PathBuf,
    },
    /// Correlate indicators across portfolios (Pearson lower / Spearman upper)
    Correlate {
        /// Indicator table produced by `compute`
        #[arg(long)]
        table: PathBuf,
        /// Comma-separated indicator subset (default: the six bounded indicators)
        #[arg(long, value_delimiter = ',')]
        indicators: Option<Vec<String>>,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw the indicator table as a deterministic SVG dot chart
    Plot {
        /// Indicator table produced by `compute`
        #[arg(long)]
        table: PathBuf,
        /// Sidecar file overriding row labels, one per line
        #[arg(long)]
        labels: Option<PathBuf>,
        /// Output SVG path
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        exit(exit_code(&e));
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnknownIndicator(_) => 1,
        Error::DimensionMismatch(_) | Error::LengthMismatch { .. } | Error::LabelCount { .. } => 3,
        Error::Io { .. } => 4,
        _ => 2,
    }
}

fn run(cli: Cli) -> diverse::Result<()> {
    match cli.command {
        Command::Compute { matrix, sim, disparity, labels, tolerance, out } => {
            let mut m = load_matrix(&matrix)?;
            if let Some(path) = labels {
                m = m.with_labels(load_labels(&path)?)?;
            }
            let d = if disparity {
                load_disparity(&sim, tolerance)?
            } else {
                load_similarity(&sim, tolerance)?.to_disparity()
            };
            let table = batch_indicators(&m, &d)?;
            write_output(&table, &out)?;
            eprintln!(
                "analyzed {} columns over {} categories -> {}",
                m.cols(),
                m.rows(),
                out.display()
            );
        }
        Command::Cosine { occurrence, out } => {
            let m = load_matrix(&occurrence)?;
            let occ = OccurrenceMatrix::new(m.rows(), m.cols(), m.values().to_vec())?;
            let s = occ.cosine_similarity();
            write_similarity_csv(&s, &out)?;
            eprintln!(
                "wrote {0}x{0} cosine similarity matrix -> {1}",
                s.size(),
                out.display()
            );
        }
        Command::Correlate { table, indicators, out } => {
            let t = read_output(&table)?;
            let names: Vec<String> = indicators.unwrap_or_else(|| {
                DEFAULT_INDICATORS.iter().map(|s| (*s).to_string()).collect()
            });
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let ct = correlation_table(&t, &refs)?;
            write_atomic(&out, ct.to_csv().as_bytes())?;
            eprintln!(
                "correlated {} indicators over {} portfolios -> {}",
                refs.len(),
                ct.n(),
                out.display()
            );
        }
        Command::Plot { table, labels, out } => {
            let mut t = read_output(&table)?;
            if let Some(path) = labels {
                t = t.with_labels(load_labels(&path)?)?;
            }
            write_atomic(&out, plot::render(&t).as_bytes())?;
            eprintln!("plotted {} portfolios -> {}", t.len(), out.display());
        }
    }
    Ok(())
}
