//! Similarity and disparity matrices over category spaces.
//!
//! A similarity matrix holds pairwise cosine values between category vectors
//! (unit diagonal); the corresponding disparity matrix holds `1 - cosine`
//! (zero diagonal). Both are dense, symmetric, and validated on construction.

use crate::error::{Error, Result};

/// Symmetric N x N matrix of cosine similarities with unit diagonal,
/// entries in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    size: usize,
    values: Vec<f64>,
}

/// Symmetric N x N matrix of pairwise category disparities with zero
/// diagonal, entries in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct DisparityMatrix {
    size: usize,
    values: Vec<f64>,
}

/// Nonnegative occurrence counts, documents as rows and categories as
/// columns. Cosine similarity is taken between the column vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct OccurrenceMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

/// Shared validation for square matrices read from untrusted input: checks
/// shape, entry range, diagonal, and symmetry within `tolerance`, then
/// stores the exactly symmetrized average with entries clamped to [0, 1]
/// and the diagonal forced to `diagonal`.
fn validate_square(
    raw: &[Vec<f64>],
    tolerance: f64,
    diagonal: f64,
) -> Result<(usize, Vec<f64>)> {
    let n = raw.len();
    if n == 0 {
        return Err(Error::EmptyInput("matrix has no rows".into()));
    }
    for row in raw {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    let (lo, hi) = (0.0 - tolerance, 1.0 + tolerance);
    for (i, row) in raw.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if !v.is_finite() || v < lo || v > hi {
                return Err(Error::OutOfRange {
                    row: i + 1,
                    col: j + 1,
                    value: v,
                    min: lo,
                    max: hi,
                });
            }
        }
    }
    for (i, row) in raw.iter().enumerate() {
        if (row[i] - diagonal).abs() > tolerance {
            return Err(Error::BadDiagonal {
                index: i + 1,
                expected: diagonal,
                value: row[i],
            });
        }
    }
    // Find the worst asymmetric pair before rejecting anything.
    let mut worst: Option<(usize, usize, f64)> = None;
    for i in 0..n {
        for j in (i + 1)..n {
            let delta = (raw[i][j] - raw[j][i]).abs();
            if delta > worst.map_or(0.0, |(_, _, d)| d) {
                worst = Some((i, j, delta));
            }
        }
    }
    if let Some((i, j, delta)) = worst {
        if delta > tolerance {
            return Err(Error::Asymmetric {
                row: i + 1,
                col: j + 1,
                upper: raw[i][j],
                lower: raw[j][i],
                delta,
                tolerance,
            });
        }
    }
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        values[i * n + i] = diagonal;
        for j in (i + 1)..n {
            let v = ((raw[i][j] + raw[j][i]) / 2.0).clamp(0.0, 1.0);
            values[i * n + j] = v;
            values[j * n + i] = v;
        }
    }
    Ok((n, values))
}

impl SimilarityMatrix {
    /// Validates a raw square matrix as a similarity matrix: diagonal within
    /// `tolerance` of 1, entries in [-tolerance, 1 + tolerance], symmetric
    /// within `tolerance`. The stored matrix is the symmetrized average,
    /// clamped to [0, 1], with the diagonal forced to exactly 1.
    pub fn validate(raw: &[Vec<f64>], tolerance: f64) -> Result<Self> {
        let (size, values) = validate_square(raw, tolerance, 1.0)?;
        Ok(SimilarityMatrix { size, values })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.size + col]
    }

    /// Row slices in order, e.g. for serialization.
    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.size)
    }

    /// Converts to disparity by `d_ij = 1 - s_ij` off the diagonal; the
    /// diagonal becomes exactly 0.
    pub fn to_disparity(&self) -> DisparityMatrix {
        let n = self.size;
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    values[i * n + j] = 1.0 - self.values[i * n + j];
                }
            }
        }
        DisparityMatrix { size: n, values }
    }
}

impl DisparityMatrix {
    /// Validates a raw square matrix as a disparity matrix: zero diagonal,
    /// entries in [-tolerance, 1 + tolerance], symmetric within `tolerance`.
    /// Stored symmetrized and clamped, diagonal forced to exactly 0.
    pub fn validate(raw: &[Vec<f64>], tolerance: f64) -> Result<Self> {
        let (size, values) = validate_square(raw, tolerance, 0.0)?;
        Ok(DisparityMatrix { size, values })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.size + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.size)
    }
}

impl OccurrenceMatrix {
    /// Row-major occurrence counts; every entry must be finite and >= 0.
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyInput(
                "occurrence matrix needs at least one row and one column".into(),
            ));
        }
        if values.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a {}x{} matrix",
                values.len(),
                rows,
                cols
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidPortfolio(format!(
                "occurrence value at row {}, column {} is {}",
                bad / cols + 1,
                bad % cols + 1,
                values[bad]
            )));
        }
        Ok(OccurrenceMatrix { rows, cols, values })
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

    /// Cosine similarity between every pair of column vectors.
    ///
    /// The diagonal is forced to exactly 1. A zero column has similarity 0
    /// to every other column; bit-identical columns get similarity exactly 1.
    /// The result is symmetric by construction (each unordered pair is
    /// computed once) and passes [`SimilarityMatrix::validate`] at
    /// tolerance 0.
    pub fn cosine_similarity(&self) -> SimilarityMatrix {
        let n = self.cols;
        let mut self_dot = vec![0.0; n];
        for (j, dot) in self_dot.iter_mut().enumerate() {
            *dot = (0..self.rows).map(|r| self.get(r, j) * self.get(r, j)).sum();
        }
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            values[i * n + i] = 1.0;
            for j in (i + 1)..n {
                let dot: f64 = (0..self.rows).map(|r| self.get(r, i) * self.get(r, j)).sum();
                let s = if self_dot[i] == 0.0 || self_dot[j] == 0.0 {
                    0.0
                } else if dot == self_dot[i] && dot == self_dot[j] {
                    // Identical columns: do not let sqrt rounding spoil s = 1.
                    1.0
                } else {
                    (dot / (self_dot[i] * self_dot[j]).sqrt()).clamp(0.0, 1.0)
                };
                values[i * n + j] = s;
                values[j * n + i] = s;
            }
        }
        SimilarityMatrix { size: n, values }
    }
}
