//! Reading and writing the CSV file formats.
//!
//! Input matrices are headerless comma-separated numbers: the count matrix
//! has categories as rows and portfolios as columns; similarity and
//! disparity matrices are square. The indicator table (`diverse.csv`) has a
//! fixed header and one row per portfolio. All writes are atomic (temp file
//! plus rename) and byte-deterministic.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::disparity::{DisparityMatrix, SimilarityMatrix};
use crate::error::{Error, Result};
use crate::measures::IndicatorRecord;

/// Header of the indicator table, in output order.
pub const OUTPUT_HEADER: [&str; 12] = [
    "column",
    "label",
    "rao_stirling",
    "div",
    "gini",
    "gini_simpson",
    "shannon",
    "h_max",
    "variety_relative",
    "n_total",
    "n_present",
    "coeff_variation",
];

/// A parsed headerless numeric matrix: categories as rows, portfolios as
/// columns, with optional per-column labels from a sidecar file.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl MatrixFile {
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || values.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a {}x{} matrix",
                values.len(),
                rows,
                cols
            )));
        }
        Ok(MatrixFile { rows, cols, values, labels: None })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }

    /// One portfolio: the counts down column `col`.
    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Attaches per-column labels; the count must match the column count.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.cols {
            return Err(Error::LabelCount { labels: labels.len(), columns: self.cols });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
}

/// One IndicatorRecord per analyzed column, in input order, plus the labels
/// that accompany them in the output file.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    records: Vec<IndicatorRecord>,
    labels: Option<Vec<String>>,
}

impl OutputTable {
    pub fn new(records: Vec<IndicatorRecord>) -> Self {
        OutputTable { records, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.records.len() {
            return Err(Error::LabelCount {
                labels: labels.len(),
                columns: self.records.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn records(&self) -> &[IndicatorRecord] {
        &self.records
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Display label for row `i`: the sidecar label when present and
    /// nonempty, otherwise the 1-based column index.
    pub fn display_label(&self, i: usize) -> String {
        match self.labels.as_ref().map(|l| l[i].as_str()) {
            Some(l) if !l.is_empty() => l.to_string(),
            _ => self.records[i].column_index.to_string(),
        }
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Splits file content into lines, accepting LF and CRLF and ignoring one
/// trailing final newline.
fn split_lines(content: &str) -> Vec<&str> {
    let trimmed = content.strip_suffix('\n').unwrap_or(content);
    trimmed
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .collect()
}

/// Parses headerless comma-separated numbers into rectangular rows.
/// `require_nonnegative` enforces the count-matrix invariant; similarity
/// input leaves range checking to matrix validation instead.
fn parse_rows(path: &Path, require_nonnegative: bool) -> Result<Vec<Vec<f64>>> {
    let content = read_to_string(path)?;
    if content.trim().is_empty() {
        return Err(Error::EmptyInput(format!("{}: no data rows", path.display())));
    }
    let lines = split_lines(&content);
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(lines.len());
    let mut width = 0usize;
    for (idx, line) in lines.iter().enumerate() {
        let line_no = idx + 1;
        let mut row = Vec::with_capacity(width.max(1));
        for (col_idx, field) in line.split(',').enumerate() {
            let field = field.trim();
            let value: f64 = field.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("column {}: '{}' is not a number", col_idx + 1, field),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("column {}: '{}' is not finite", col_idx + 1, field),
                });
            }
            if require_nonnegative && value < 0.0 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("column {}: negative value {}", col_idx + 1, value),
                });
            }
            row.push(value);
        }
        if idx == 0 {
            width = row.len();
        } else if row.len() != width {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {} fields, found {}", width, row.len()),
            });
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Loads a headerless count matrix. Rows are categories, columns are
/// portfolios; every field must be a finite nonnegative number and every
/// row must have the same field count.
pub fn load_matrix(path: &Path) -> Result<MatrixFile> {
    let rows = parse_rows(path, true)?;
    let r = rows.len();
    let c = rows[0].len();
    MatrixFile::new(r, c, rows.into_iter().flatten().collect())
}

/// Loads and validates a headerless square similarity matrix.
pub fn load_similarity(path: &Path, tolerance: f64) -> Result<SimilarityMatrix> {
    SimilarityMatrix::validate(&parse_rows(path, false)?, tolerance)
}

/// Loads and validates a headerless square disparity matrix (zero diagonal).
pub fn load_disparity(path: &Path, tolerance: f64) -> Result<DisparityMatrix> {
    DisparityMatrix::validate(&parse_rows(path, false)?, tolerance)
}

/// Loads a labels sidecar: one UTF-8 label per line.
pub fn load_labels(path: &Path) -> Result<Vec<String>> {
    let content = read_to_string(path)?;
    Ok(split_lines(&content).into_iter().map(str::to_string).collect())
}

/// Shortest decimal representation that reparses to the identical double;
/// negative zero is normalized so equal values print identically.
pub fn format_value(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v}")
    }
}

/// Writes `bytes` to `path` atomically: the data goes to a temporary file
/// in the same directory which is renamed over the target on success, so a
/// failed run never leaves a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// Writes the indicator table as `diverse.csv`: fixed header, one row per
/// column in input order, full-precision values, empty cell where the
/// coefficient of variation is undefined.
pub fn write_output(table: &OutputTable, path: &Path) -> Result<()> {
    if table.is_empty() {
        return Err(Error::EmptyTable);
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(OUTPUT_HEADER)
        .map_err(|e| csv_error(path, e))?;
    let empty = String::new();
    for (i, r) in table.records().iter().enumerate() {
        let label = table
            .labels()
            .map_or(&empty, |l| &l[i]);
        writer
            .write_record([
                r.column_index.to_string(),
                label.clone(),
                format_value(r.rao_stirling),
                format_value(r.div),
                format_value(r.gini),
                format_value(r.gini_simpson),
                format_value(r.shannon),
                format_value(r.h_max),
                format_value(r.variety_relative),
                r.n_total.to_string(),
                r.n_present.to_string(),
                r.coeff_variation.map_or(String::new(), format_value),
            ])
            .map_err(|e| csv_error(path, e))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::io(path, std::io::Error::other(e)))?;
    write_atomic(path, &bytes)
}

/// Reads a `diverse.csv` back into an OutputTable. The header must match
/// [`OUTPUT_HEADER`]; an empty coeff_variation cell becomes missing.
pub fn read_output(path: &Path) -> Result<OutputTable> {
    let content = read_to_string(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(content.as_bytes());
    let header = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    if header.iter().ne(OUTPUT_HEADER) {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "unexpected header '{}'; expected '{}'",
                header.iter().collect::<Vec<_>>().join(","),
                OUTPUT_HEADER.join(",")
            ),
        });
    }
    let mut records = Vec::new();
    let mut labels = Vec::new();
    for (idx, row) in reader.records().enumerate() {
        let line_no = idx + 2;
        let row = row.map_err(|e| csv_error(path, e))?;
        if row.len() != OUTPUT_HEADER.len() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {} fields, found {}", OUTPUT_HEADER.len(), row.len()),
            });
        }
        let field = |i: usize| row.get(i).unwrap_or("");
        let parse_f64 = |i: usize| -> Result<f64> {
            field(i).parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!(
                    "column {} ({}): '{}' is not a number",
                    i + 1,
                    OUTPUT_HEADER[i],
                    field(i)
                ),
            })
        };
        let parse_usize = |i: usize| -> Result<usize> {
            field(i).parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!(
                    "column {} ({}): '{}' is not a count",
                    i + 1,
                    OUTPUT_HEADER[i],
                    field(i)
                ),
            })
        };
        records.push(IndicatorRecord {
            column_index: parse_usize(0)?,
            rao_stirling: parse_f64(2)?,
            div: parse_f64(3)?,
            gini: parse_f64(4)?,
            gini_simpson: parse_f64(5)?,
            shannon: parse_f64(6)?,
            h_max: parse_f64(7)?,
            variety_relative: parse_f64(8)?,
            n_total: parse_usize(9)?,
            n_present: parse_usize(10)?,
            coeff_variation: if field(11).is_empty() { None } else { Some(parse_f64(11)?) },
        });
        labels.push(field(1).to_string());
    }
    if records.is_empty() {
        return Err(Error::EmptyTable);
    }
    let table = OutputTable::new(records);
    if labels.iter().any(|l| !l.is_empty()) {
        table.with_labels(labels)
    } else {
        Ok(table)
    }
}

/// Writes a similarity matrix as a headerless CSV that reloads through
/// [`load_similarity`] at tolerance 0.
pub fn write_similarity_csv(sim: &SimilarityMatrix, path: &Path) -> Result<()> {
    let mut out = String::new();
    for row in sim.rows() {
        let mut first = true;
        for &v in row {
            if !first {
                out.push(',');
            }
            first = false;
            let _ = write!(out, "{}", format_value(v));
        }
        out.push('\n');
    }
    write_atomic(path, out.as_bytes())
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let line = match e.position() {
        Some(pos) => pos.line() as usize,
        None => 0,
    };
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Parse {
            line,
            message: format!("{other:?}"),
        },
    }
}
