//! Deterministic fixture generators for benchmarks and load experiments.
//!
//! Everything is seeded, so repeated runs measure the same inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use diverse::{DisparityMatrix, MatrixFile, OccurrenceMatrix, PortfolioVector};

/// Count vector of length `n`; roughly `zero_share` of the entries are 0,
/// the rest uniform in (0, 100].
pub fn seeded_counts(n: usize, zero_share: f64, seed: u64) -> PortfolioVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let counts = (0..n)
        .map(|_| {
            if rng.gen_bool(zero_share) {
                0.0
            } else {
                100.0 - rng.gen::<f64>() * 100.0
            }
        })
        .collect();
    PortfolioVector::new(counts).expect("generated counts are valid")
}

/// Symmetric `n x n` disparity matrix with zero diagonal and entries
/// uniform in [0, 1].
pub fn seeded_disparity(n: usize, seed: u64) -> DisparityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.gen_range(0.0..=1.0);
            raw[i][j] = v;
            raw[j][i] = v;
        }
    }
    DisparityMatrix::validate(&raw, 0.0).expect("generated matrix is valid")
}

/// Count matrix with `rows` categories and `cols` portfolios.
pub fn seeded_matrix(rows: usize, cols: usize, zero_share: f64, seed: u64) -> MatrixFile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..rows * cols)
        .map(|_| {
            if rng.gen_bool(zero_share) {
                0.0
            } else {
                rng.gen_range(1..500) as f64
            }
        })
        .collect();
    MatrixFile::new(rows, cols, values).expect("generated matrix is valid")
}

/// Occurrence matrix (documents x categories) of small integer counts.
pub fn seeded_occurrence(rows: usize, cols: usize, seed: u64) -> OccurrenceMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..rows * cols)
        .map(|_| {
            if rng.gen_bool(0.6) {
                0.0
            } else {
                rng.gen_range(1..10) as f64
            }
        })
        .collect();
    OccurrenceMatrix::new(rows, cols, values).expect("generated matrix is valid")
}
