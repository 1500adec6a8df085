use std::path::{Path, PathBuf};

/// Errors produced by indicator computation, matrix validation, and file I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A scalar indicator was requested for a vector with no positive entries.
    #[error("{op} undefined on empty support")]
    EmptySupport { op: &'static str },

    /// A portfolio vector failed its basic invariants (negative, non-finite,
    /// or zero-length input).
    #[error("invalid portfolio: {0}")]
    InvalidPortfolio(String),

    /// Two inputs that must agree in size do not.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Two sequences that must have equal length do not.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Malformed numeric input. `line` is 1-based; the message names the
    /// offending field where one can be identified.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A file or table contained no usable data.
    #[error("empty input: {0}")]
    EmptyInput(String),

    /// A matrix that must be square is not.
    #[error("matrix is not square: {rows} rows, {cols} columns")]
    NotSquare { rows: usize, cols: usize },

    /// Worst asymmetric cell of a matrix that must be symmetric. Indices are
    /// 1-based.
    #[error(
        "asymmetric at cell ({row}, {col}): |{upper} - {lower}| = {delta:e} exceeds tolerance {tolerance:e}"
    )]
    Asymmetric {
        row: usize,
        col: usize,
        upper: f64,
        lower: f64,
        delta: f64,
        tolerance: f64,
    },

    /// Matrix entry outside the admissible range. Indices are 1-based.
    #[error("value out of range at cell ({row}, {col}): {value} not in [{min}, {max}]")]
    OutOfRange {
        row: usize,
        col: usize,
        value: f64,
        min: f64,
        max: f64,
    },

    /// Diagonal entry away from its required value. Index is 1-based.
    #[error("diagonal must be {expected} at cell ({index}, {index}): found {value}")]
    BadDiagonal {
        index: usize,
        expected: f64,
        value: f64,
    },

    /// Labels sidecar does not match the number of analyzed columns.
    #[error("label count mismatch: {labels} labels for {columns} columns")]
    LabelCount { labels: usize, columns: usize },

    /// An output table with no rows cannot be written.
    #[error("no columns analyzed")]
    EmptyTable,

    /// Correlation requires at least three observations.
    #[error("need at least 3 portfolios, got {0}")]
    TooFewRows(usize),

    /// A series with zero variance has no defined correlation.
    #[error("constant series: {0}")]
    ConstantSeries(String),

    /// An indicator name not present in the output table.
    #[error("unknown indicator: {0}")]
    UnknownIndicator(String),

    /// Filesystem failure, annotated with the path involved.
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
