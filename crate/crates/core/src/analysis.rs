//! Batch indicator computation and cross-indicator correlation tables.
//!
//! `batch_indicators` scores every column of a count matrix against one
//! disparity matrix. `correlation_table` then relates the indicators across
//! portfolios, Pearson in the lower triangle and Spearman in the upper, with
//! two-tailed significance stars.

use crate::dataio::{MatrixFile, OutputTable};
use crate::disparity::DisparityMatrix;
use crate::error::{Error, Result};
use crate::measures::{indicator_record, IndicatorRecord, PortfolioVector};

/// Indicator columns accepted by [`correlation_table`].
pub const INDICATOR_NAMES: [&str; 10] = [
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

/// Default correlation set: the six bounded diversity indicators.
pub const DEFAULT_INDICATORS: [&str; 6] = [
    "rao_stirling",
    "div",
    "gini",
    "variety_relative",
    "gini_simpson",
    "shannon",
];

/// Two-tailed significance level of a correlation coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Significance {
    NotSignificant,
    /// p < 0.05, rendered `*`.
    P05,
    /// p < 0.01, rendered `**`.
    P01,
}

impl Significance {
    pub fn suffix(self) -> &'static str {
        match self {
            Significance::NotSignificant => "",
            Significance::P05 => "*",
            Significance::P01 => "**",
        }
    }
}

/// One filled cell of a correlation table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub coefficient: f64,
    pub significance: Significance,
}

/// Square indicator-by-indicator table: Pearson r below the diagonal,
/// Spearman rho above, blank diagonal. Cells are missing where a series is
/// constant.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTable {
    names: Vec<String>,
    n: usize,
    cells: Vec<Option<Cell>>,
}

/// Scores every column of `m` against `d`; `d` must be square with size
/// equal to the matrix row (category) count. Labels carry over from the
/// matrix file.
pub fn batch_indicators(m: &MatrixFile, d: &DisparityMatrix) -> Result<OutputTable> {
    if d.size() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} category rows but disparity matrix is {}x{}",
            m.rows(),
            d.size(),
            d.size()
        )));
    }
    let mut records = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let v = PortfolioVector::new(m.column(j))?;
        records.push(indicator_record(j + 1, &v, d)?);
    }
    let table = OutputTable::new(records);
    match m.labels() {
        Some(labels) => table.with_labels(labels.to_vec()),
        None => Ok(table),
    }
}

/// Pearson product-moment correlation. Needs equal lengths, n >= 3, and
/// nonzero variance on both sides; the result is clamped to [-1, 1].
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    if x.len() < 3 {
        return Err(Error::TooFewRows(x.len()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 {
        return Err(Error::ConstantSeries("first series has zero variance".into()));
    }
    if syy == 0.0 {
        return Err(Error::ConstantSeries("second series has zero variance".into()));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Ranks 1..n in ascending order of value; tied values all receive the mean
/// of the ranks they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let mean_rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = mean_rank;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank-order correlation: the Pearson correlation of average
/// ranks. Errors if either series is entirely tied.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    pearson(&average_ranks(x), &average_ranks(y))
}

// Two-tailed critical values of Student's t for df = 1..=100, used to star
// correlations via t = r * sqrt((n-2)/(1-r^2)). Above df 100 the normal
// quantiles take over.
const T_CRIT_05: [f64; 100] = [
    12.706205, 4.302653, 3.182446, 2.776445, 2.570582, 2.446912, 2.364624, 2.306004, 2.262157,
    2.228139, 2.200985, 2.178813, 2.160369, 2.144787, 2.131450, 2.119905, 2.109816, 2.100922,
    2.093024, 2.085963, 2.079614, 2.073873, 2.068658, 2.063899, 2.059539, 2.055529, 2.051831,
    2.048407, 2.045230, 2.042272, 2.039513, 2.036933, 2.034515, 2.032245, 2.030108, 2.028094,
    2.026192, 2.024394, 2.022691, 2.021075, 2.019541, 2.018082, 2.016692, 2.015368, 2.014103,
    2.012896, 2.011741, 2.010635, 2.009575, 2.008559, 2.007584, 2.006647, 2.005746, 2.004879,
    2.004045, 2.003241, 2.002465, 2.001717, 2.000995, 2.000298, 1.999624, 1.998972, 1.998341,
    1.997730, 1.997138, 1.996564, 1.996008, 1.995469, 1.994945, 1.994437, 1.993943, 1.993464,
    1.992997, 1.992543, 1.992102, 1.991673, 1.991254, 1.990847, 1.990450, 1.990063, 1.989686,
    1.989319, 1.988960, 1.988610, 1.988268, 1.987934, 1.987608, 1.987290, 1.986979, 1.986675,
    1.986377, 1.986086, 1.985802, 1.985523, 1.985251, 1.984984, 1.984723, 1.984467, 1.984217,
    1.983972,
];

const T_CRIT_01: [f64; 100] = [
    63.656741, 9.924843, 5.840909, 4.604095, 4.032143, 3.707428, 3.499483, 3.355387, 3.249836,
    3.169273, 3.105807, 3.054540, 3.012276, 2.976843, 2.946713, 2.920782, 2.898231, 2.878440,
    2.860935, 2.845340, 2.831360, 2.818756, 2.807336, 2.796940, 2.787436, 2.778715, 2.770683,
    2.763262, 2.756386, 2.749996, 2.744042, 2.738481, 2.733277, 2.728394, 2.723806, 2.719485,
    2.715409, 2.711558, 2.707913, 2.704459, 2.701181, 2.698066, 2.695102, 2.692278, 2.689585,
    2.687013, 2.684556, 2.682204, 2.679952, 2.677793, 2.675722, 2.673734, 2.671823, 2.669985,
    2.668216, 2.666512, 2.664870, 2.663287, 2.661759, 2.660283, 2.658857, 2.657479, 2.656145,
    2.654854, 2.653604, 2.652394, 2.651220, 2.650081, 2.648977, 2.647905, 2.646863, 2.645852,
    2.644869, 2.643913, 2.642983, 2.642078, 2.641198, 2.640340, 2.639505, 2.638691, 2.637897,
    2.637123, 2.636369, 2.635632, 2.634914, 2.634212, 2.633527, 2.632858, 2.632204, 2.631565,
    2.630940, 2.630330, 2.629732, 2.629148, 2.628576, 2.628016, 2.627468, 2.626931, 2.626405,
    2.625891,
];

const Z_CRIT_05: f64 = 1.959963984540054;
const Z_CRIT_01: f64 = 2.5758293035489004;

/// Stars a coefficient by the two-tailed t criterion at sample size `n`.
pub fn significance(r: f64, n: usize) -> Significance {
    if n < 3 {
        return Significance::NotSignificant;
    }
    let df = n - 2;
    let (crit05, crit01) = if df <= 100 {
        (T_CRIT_05[df - 1], T_CRIT_01[df - 1])
    } else {
        (Z_CRIT_05, Z_CRIT_01)
    };
    let t = if r.abs() >= 1.0 {
        f64::INFINITY
    } else {
        r.abs() * (df as f64 / (1.0 - r * r)).sqrt()
    };
    if t >= crit01 {
        Significance::P01
    } else if t >= crit05 {
        Significance::P05
    } else {
        Significance::NotSignificant
    }
}

fn indicator_value(r: &IndicatorRecord, name: &str) -> Option<f64> {
    match name {
        "rao_stirling" => Some(r.rao_stirling),
        "div" => Some(r.div),
        "gini" => Some(r.gini),
        "gini_simpson" => Some(r.gini_simpson),
        "shannon" => Some(r.shannon),
        "h_max" => Some(r.h_max),
        "variety_relative" => Some(r.variety_relative),
        "n_total" => Some(r.n_total as f64),
        "n_present" => Some(r.n_present as f64),
        "coeff_variation" => r.coeff_variation,
        _ => None,
    }
}

/// Correlates the selected indicator columns across all rows of `table`.
/// Rows with a missing value in any selected indicator are dropped before
/// correlating; at least 3 complete rows must remain. Constant columns
/// yield missing cells rather than an error.
pub fn correlation_table(table: &OutputTable, indicators: &[&str]) -> Result<CorrelationTable> {
    if indicators.is_empty() {
        return Err(Error::UnknownIndicator("(empty selection)".into()));
    }
    for name in indicators {
        if !INDICATOR_NAMES.contains(name) {
            return Err(Error::UnknownIndicator((*name).to_string()));
        }
    }
    if table.len() < 3 {
        return Err(Error::TooFewRows(table.len()));
    }
    let complete: Vec<&IndicatorRecord> = table
        .records()
        .iter()
        .filter(|r| indicators.iter().all(|name| indicator_value(r, name).is_some()))
        .collect();
    if complete.len() < 3 {
        return Err(Error::TooFewRows(complete.len()));
    }
    let n = complete.len();
    let columns: Vec<Vec<f64>> = indicators
        .iter()
        .map(|name| {
            complete
                .iter()
                .map(|r| indicator_value(r, name).unwrap())
                .collect()
        })
        .collect();
    let k = indicators.len();
    let mut cells: Vec<Option<Cell>> = vec![None; k * k];
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let r = if i > j {
                pearson(&columns[i], &columns[j])
            } else {
                spearman(&columns[i], &columns[j])
            };
            cells[i * k + j] = match r {
                Ok(r) => Some(Cell { coefficient: r, significance: significance(r, n) }),
                Err(Error::ConstantSeries(_)) => None,
                Err(e) => return Err(e),
            };
        }
    }
    Ok(CorrelationTable {
        names: indicators.iter().map(|s| s.to_string()).collect(),
        n,
        cells,
    })
}

impl CorrelationTable {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Number of complete rows the coefficients were computed over.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Cell at (row, col); `None` on the diagonal and where a series was
    /// constant.
    pub fn cell(&self, row: usize, col: usize) -> Option<Cell> {
        self.cells[row * self.names.len() + col]
    }

    /// Renders the table as CSV: a `#` comment line stating the triangle
    /// semantics, a header of indicator names, then one row per indicator
    /// with 4-decimal coefficients and significance stars. Diagonal and
    /// missing cells are blank.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# lower triangle: Pearson r; upper triangle: Spearman rho; n={}; * p<0.05, ** p<0.01 (two-tailed)\n",
            self.n
        ));
        out.push_str("indicator");
        for name in &self.names {
            out.push(',');
            out.push_str(name);
        }
        out.push('\n');
        let k = self.names.len();
        for i in 0..k {
            out.push_str(&self.names[i]);
            for j in 0..k {
                out.push(',');
                if let Some(cell) = self.cells[i * k + j] {
                    out.push_str(&format!(
                        "{:.4}{}",
                        cell.coefficient,
                        cell.significance.suffix()
                    ));
                }
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataio::MatrixFile;

    fn d(raw: &[Vec<f64>]) -> DisparityMatrix {
        DisparityMatrix::validate(raw, 1e-9).unwrap()
    }

    #[test]
    fn batch_scores_every_column_in_order() {
        let m = MatrixFile::new(2, 3, vec![1.0, 2.0, 0.0, 3.0, 2.0, 0.0]).unwrap();
        let disp = d(&[vec![0.0, 0.5], vec![0.5, 0.0]]);
        let table = batch_indicators(&m, &disp).unwrap();
        assert_eq!(table.len(), 3);
        let idx: Vec<usize> = table.records().iter().map(|r| r.column_index).collect();
        assert_eq!(idx, vec![1, 2, 3]);
        assert_eq!(table.records()[2].n_present, 0);
    }

    #[test]
    fn batch_rejects_mismatched_sizes_naming_both() {
        let m = MatrixFile::new(11, 5, vec![0.0; 55]).unwrap();
        let disp = d(&[
            vec![0.0, 0.1, 0.1, 0.1, 0.1],
            vec![0.1, 0.0, 0.1, 0.1, 0.1],
            vec![0.1, 0.1, 0.0, 0.1, 0.1],
            vec![0.1, 0.1, 0.1, 0.0, 0.1],
            vec![0.1, 0.1, 0.1, 0.1, 0.0],
        ]);
        let err = batch_indicators(&m, &disp).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("11") && msg.contains("5"), "{msg}");
    }

    #[test]
    fn batch_permutation_equivariance() {
        let m = MatrixFile::new(3, 3, vec![1.0, 4.0, 7.0, 2.0, 5.0, 8.0, 3.0, 6.0, 9.0]).unwrap();
        let disp = d(&[
            vec![0.0, 0.3, 0.6],
            vec![0.3, 0.0, 0.9],
            vec![0.6, 0.9, 0.0],
        ]);
        // swap columns 1 and 3
        let swapped = MatrixFile::new(3, 3, vec![7.0, 4.0, 1.0, 8.0, 5.0, 2.0, 9.0, 6.0, 3.0]).unwrap();
        let t1 = batch_indicators(&m, &disp).unwrap();
        let t2 = batch_indicators(&swapped, &disp).unwrap();
        assert_eq!(t1.records()[0].rao_stirling, t2.records()[2].rao_stirling);
        assert_eq!(t1.records()[2].div, t2.records()[0].div);
    }

    #[test]
    fn pearson_known_values() {
        assert_eq!(pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap(), 1.0);
        assert_eq!(pearson(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap(), -1.0);
        assert!(
            (pearson(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).unwrap() - 0.8).abs() < 1e-15
        );
    }

    #[test]
    fn pearson_error_cases() {
        assert!(matches!(
            pearson(&[1.0, 2.0], &[1.0, 2.0, 3.0]),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        ));
        assert!(matches!(
            pearson(&[1.0, 2.0], &[1.0, 2.0]),
            Err(Error::TooFewRows(2))
        ));
        assert!(matches!(
            pearson(&[5.0, 5.0, 5.0], &[1.0, 2.0, 3.0]),
            Err(Error::ConstantSeries(_))
        ));
    }

    #[test]
    fn average_ranks_handle_ties() {
        assert_eq!(average_ranks(&[10.0, 20.0, 20.0, 30.0]), vec![1.0, 2.5, 2.5, 4.0]);
        assert_eq!(average_ranks(&[3.0, 1.0, 2.0]), vec![3.0, 1.0, 2.0]);
        assert_eq!(average_ranks(&[7.0, 7.0, 7.0]), vec![2.0, 2.0, 2.0]);
    }

    #[test]
    fn spearman_known_values() {
        assert_eq!(spearman(&[0.1, 0.5, 0.9], &[10.0, 20.0, 90.0]).unwrap(), 1.0);
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[9.0, 5.0, 1.0]).unwrap(), -1.0);
        let rho = spearman(&[1.0, 2.0, 2.0, 4.0], &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!((rho - 0.9486832980505138).abs() < 1e-15);
    }

    #[test]
    fn spearman_is_pearson_of_ranks() {
        let x = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0];
        let y = [2.0, 7.0, 1.0, 8.0, 2.0, 8.0, 1.0, 8.0];
        let direct = spearman(&x, &y).unwrap();
        let via_ranks = pearson(&average_ranks(&x), &average_ranks(&y)).unwrap();
        assert_eq!(direct, via_ranks);
    }

    #[test]
    fn significance_thresholds_at_n_20() {
        // df = 18: t_crit(0.05) = 2.1009, t_crit(0.01) = 2.8784
        assert_eq!(significance(0.3, 20), Significance::NotSignificant);
        assert_eq!(significance(0.5, 20), Significance::P05);
        assert_eq!(significance(0.7, 20), Significance::P01);
        assert_eq!(significance(-0.7, 20), Significance::P01);
        assert_eq!(significance(1.0, 20), Significance::P01);
        assert_eq!(significance(0.05, 2000), Significance::P05);
    }

    fn synthetic_table(rows: usize) -> OutputTable {
        let records = (0..rows)
            .map(|i| {
                let t = i as f64 / rows as f64;
                IndicatorRecord {
                    column_index: i + 1,
                    rao_stirling: 0.5 + 0.3 * t,
                    div: 0.1 + 0.6 * t * t,
                    gini: 0.9 - 0.5 * t,
                    gini_simpson: 0.4 + 0.2 * (t * 7.0).sin().abs(),
                    shannon: 1.0 + t,
                    h_max: 2.0,
                    variety_relative: 0.2 + 0.05 * ((i % 4) as f64),
                    n_total: 654,
                    n_present: 100 + i,
                    coeff_variation: Some(1.0 + t),
                }
            })
            .collect();
        OutputTable::new(records)
    }

    #[test]
    fn table_shape_and_triangle_semantics() {
        let table = synthetic_table(20);
        let ct = correlation_table(&table, &DEFAULT_INDICATORS).unwrap();
        assert_eq!(ct.names().len(), 6);
        assert_eq!(ct.n(), 20);
        let rao: Vec<f64> = table.records().iter().map(|r| r.rao_stirling).collect();
        let div: Vec<f64> = table.records().iter().map(|r| r.div).collect();
        // names[0] = rao_stirling, names[1] = div
        let lower = ct.cell(1, 0).unwrap();
        let upper = ct.cell(0, 1).unwrap();
        assert_eq!(lower.coefficient, pearson(&div, &rao).unwrap());
        assert_eq!(upper.coefficient, spearman(&rao, &div).unwrap());
        for i in 0..6 {
            assert_eq!(ct.cell(i, i), None);
        }
    }

    #[test]
    fn perfectly_correlated_pair_shows_one_in_both_triangles() {
        let mut records = synthetic_table(10).records().to_vec();
        for r in &mut records {
            r.shannon = 2.0 * r.rao_stirling;
        }
        let table = OutputTable::new(records);
        let ct = correlation_table(&table, &["rao_stirling", "shannon"]).unwrap();
        assert_eq!(ct.cell(1, 0).unwrap().coefficient, 1.0);
        assert_eq!(ct.cell(0, 1).unwrap().coefficient, 1.0);
    }

    #[test]
    fn constant_column_yields_missing_cells_not_abort() {
        let table = synthetic_table(12);
        let ct = correlation_table(&table, &["rao_stirling", "h_max", "div"]).unwrap();
        assert_eq!(ct.cell(1, 0), None);
        assert_eq!(ct.cell(0, 1), None);
        assert_eq!(ct.cell(2, 1), None);
        assert!(ct.cell(2, 0).is_some());
        let csv = ct.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with('#'), "{}", lines[0]);
        assert_eq!(lines[1], "indicator,rao_stirling,h_max,div");
        assert!(lines[2].starts_with("rao_stirling,,"), "{}", lines[2]);
    }

    #[test]
    fn unknown_indicator_and_too_few_rows_error() {
        let table = synthetic_table(20);
        assert!(matches!(
            correlation_table(&table, &["gini", "sparkle"]),
            Err(Error::UnknownIndicator(name)) if name == "sparkle"
        ));
        let small = synthetic_table(2);
        let err = correlation_table(&small, &DEFAULT_INDICATORS).unwrap_err();
        assert_eq!(err.to_string(), "need at least 3 portfolios, got 2");
    }

    #[test]
    fn missing_values_drop_whole_rows() {
        let mut records = synthetic_table(10).records().to_vec();
        records[3].coeff_variation = None;
        records[7].coeff_variation = None;
        let table = OutputTable::new(records.clone());
        let ct = correlation_table(&table, &["gini", "coeff_variation"]).unwrap();
        assert_eq!(ct.n(), 8);
        let kept: Vec<&IndicatorRecord> =
            records.iter().filter(|r| r.coeff_variation.is_some()).collect();
        let gini: Vec<f64> = kept.iter().map(|r| r.gini).collect();
        let cv: Vec<f64> = kept.iter().map(|r| r.coeff_variation.unwrap()).collect();
        assert_eq!(ct.cell(1, 0).unwrap().coefficient, pearson(&cv, &gini).unwrap());
    }

    #[test]
    fn csv_cells_carry_stars() {
        let table = synthetic_table(20);
        let ct = correlation_table(&table, &["rao_stirling", "shannon"]).unwrap();
        // shannon is linear in t, rao_stirling is too: r = 1 → **
        let csv = ct.to_csv();
        assert!(csv.contains("1.0000**"), "{csv}");
        assert!(csv.contains("n=20"), "{csv}");
    }
}
