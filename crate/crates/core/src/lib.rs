//! Diversity indicators for category portfolios.
//!
//! Given a matrix of counts (categories as rows, portfolios as columns) and
//! a pairwise similarity or disparity matrix over the categories, this crate
//! computes variety, balance, and disparity indicators per portfolio —
//! Rao-Stirling diversity, the three-factor DIV measure, Gini, Gini-Simpson,
//! Shannon entropy, and the coefficient of variation — and correlates them
//! across portfolios.

pub mod analysis;
pub mod dataio;
pub mod disparity;
pub mod error;
pub mod measures;

pub use analysis::{
    average_ranks, batch_indicators, correlation_table, pearson, significance, spearman, Cell,
    CorrelationTable, Significance, DEFAULT_INDICATORS, INDICATOR_NAMES,
};
pub use dataio::{
    load_disparity, load_labels, load_matrix, load_similarity, read_output, write_atomic,
    write_output, write_similarity_csv, MatrixFile, OutputTable, OUTPUT_HEADER,
};
pub use disparity::{DisparityMatrix, OccurrenceMatrix, SimilarityMatrix};
pub use error::{Error, Result};
pub use measures::{
    coefficient_of_variation, div, gini, gini_simpson, indicator_record, mean_disparity,
    rao_stirling, relative_variety, shannon, IndicatorRecord, PortfolioVector,
};
