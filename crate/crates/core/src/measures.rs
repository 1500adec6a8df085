//! Diversity indicators for a single category portfolio.
//!
//! A portfolio is a vector of nonnegative counts over N categories. The
//! indicators decompose diversity into variety (how many categories are
//! used), balance (how evenly), and disparity (how different the used
//! categories are from each other), plus combined measures that multiply
//! or sum those ingredients.

use crate::disparity::DisparityMatrix;
use crate::error::{Error, Result};

/// Nonnegative counts over N categories. Entries equal to zero mean the
/// category is absent from the portfolio.
#[derive(Debug, Clone, PartialEq)]
pub struct PortfolioVector {
    counts: Vec<f64>,
}

impl PortfolioVector {
    pub fn new(counts: Vec<f64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidPortfolio("portfolio has no categories".into()));
        }
        if let Some(i) = counts.iter().position(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::InvalidPortfolio(format!(
                "count at position {} is {}",
                i + 1,
                counts[i]
            )));
        }
        Ok(PortfolioVector { counts })
    }

    /// Total number of categories, present or not.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn counts(&self) -> &[f64] {
        &self.counts
    }

    pub fn total(&self) -> f64 {
        self.counts.iter().sum()
    }

    /// Indices of categories with count > 0.
    pub fn support(&self) -> Vec<usize> {
        (0..self.counts.len()).filter(|&i| self.counts[i] > 0.0).collect()
    }

    /// Number of categories with count > 0.
    pub fn n_present(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0.0).count()
    }
}

/// Every indicator computed for one portfolio (one column of an
/// occurrence-by-portfolio matrix).
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorRecord {
    /// 1-based column index in the source matrix.
    pub column_index: usize,
    pub rao_stirling: f64,
    pub div: f64,
    pub gini: f64,
    pub gini_simpson: f64,
    pub shannon: f64,
    pub h_max: f64,
    pub variety_relative: f64,
    pub n_total: usize,
    pub n_present: usize,
    /// Missing for an all-zero portfolio (σ/μ is undefined there).
    pub coeff_variation: Option<f64>,
}

fn check_dims(v: &PortfolioVector, d: &DisparityMatrix) -> Result<()> {
    if d.size() != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "portfolio has {} categories but disparity matrix is {}x{}",
            v.len(),
            d.size(),
            d.size()
        )));
    }
    Ok(())
}

/// Gini coefficient of the positive entries, zeros excluded.
///
/// Uses the rank form G = Σ(2i − n − 1)·x_(i) / (n·Σx) with the positive
/// entries sorted ascending and ranked i = 1..n. Equivalent to the
/// classical relative-mean-difference double sum; 0 for a perfectly even
/// support, at most (n−1)/n.
pub fn gini(v: &PortfolioVector) -> Result<f64> {
    let mut xs: Vec<f64> = v.counts().iter().copied().filter(|&c| c > 0.0).collect();
    if xs.is_empty() {
        return Err(Error::EmptySupport { op: "gini" });
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let total: f64 = xs.iter().sum();
    let weighted: f64 = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| (2.0 * (i as f64 + 1.0) - n - 1.0) * x)
        .sum();
    Ok(weighted / (n * total))
}

/// Fraction of categories in use: n_present / n_total. Total function;
/// an all-zero portfolio has relative variety 0.
pub fn relative_variety(v: &PortfolioVector) -> f64 {
    v.n_present() as f64 / v.len() as f64
}

/// Gini-Simpson index 1 − Σ p_i², the probability that two draws fall in
/// different categories. 0 when concentrated, at most 1 − 1/N.
pub fn gini_simpson(v: &PortfolioVector) -> Result<f64> {
    let total = v.total();
    if total <= 0.0 {
        return Err(Error::EmptySupport { op: "gini_simpson" });
    }
    let sum_sq: f64 = v
        .counts()
        .iter()
        .map(|&c| {
            let p = c / total;
            p * p
        })
        .sum();
    Ok(1.0 - sum_sq)
}

/// Shannon entropy in bits and its maximum: (H, H_max) with
/// H = −Σ p_i log2 p_i over the positive entries and H_max = log2 N over
/// the full category space.
pub fn shannon(v: &PortfolioVector) -> Result<(f64, f64)> {
    let total = v.total();
    if total <= 0.0 {
        return Err(Error::EmptySupport { op: "shannon" });
    }
    let h = -v
        .counts()
        .iter()
        .filter(|&&c| c > 0.0)
        .map(|&c| {
            let p = c / total;
            p * p.log2()
        })
        .sum::<f64>();
    Ok((h.max(0.0), (v.len() as f64).log2()))
}

/// Rao-Stirling diversity Σ_{i≠j} p_i p_j d_ij over all ordered pairs
/// (each unordered pair counted twice).
pub fn rao_stirling(v: &PortfolioVector, d: &DisparityMatrix) -> Result<f64> {
    check_dims(v, d)?;
    let total = v.total();
    if total <= 0.0 {
        return Err(Error::EmptySupport { op: "rao_stirling" });
    }
    let support = v.support();
    let mut sum = 0.0;
    for (a, &i) in support.iter().enumerate() {
        let p_i = v.counts()[i] / total;
        for &j in &support[a + 1..] {
            let p_j = v.counts()[j] / total;
            sum += p_i * p_j * d.get(i, j);
        }
    }
    Ok(2.0 * sum)
}

/// Mean pairwise disparity among the present categories:
/// Σ_{i≠j over support} d_ij / (n_c (n_c − 1)). Defined as 0 when fewer
/// than two categories are present.
pub fn mean_disparity(v: &PortfolioVector, d: &DisparityMatrix) -> Result<f64> {
    check_dims(v, d)?;
    let support = v.support();
    let n_c = support.len();
    if n_c <= 1 {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for &i in &support {
        for &j in &support {
            if i != j {
                sum += d.get(i, j);
            }
        }
    }
    Ok(sum / (n_c as f64 * (n_c as f64 - 1.0)))
}

/// Combined diversity: relative variety × Gini × mean disparity, the exact
/// product of the three factor functions. Total function; an all-zero
/// portfolio scores 0.
pub fn div(v: &PortfolioVector, d: &DisparityMatrix) -> Result<f64> {
    check_dims(v, d)?;
    if v.n_present() == 0 {
        return Ok(0.0);
    }
    Ok(relative_variety(v) * gini(v)? * mean_disparity(v, d)?)
}

/// Coefficient of variation σ/μ of the positive entries, with population
/// standard deviation. Not bounded above by 1.
pub fn coefficient_of_variation(v: &PortfolioVector) -> Result<f64> {
    let xs: Vec<f64> = v.counts().iter().copied().filter(|&c| c > 0.0).collect();
    if xs.is_empty() {
        return Err(Error::EmptySupport { op: "coefficient_of_variation" });
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|&x| (x - mean) * (x - mean)).sum::<f64>() / n;
    Ok(var.sqrt() / mean)
}

/// Computes every indicator for one portfolio. For an all-zero portfolio
/// the bounded indicators are 0, entropy is 0 with h_max still log2 N, and
/// the coefficient of variation is missing. Only a dimension mismatch is
/// an error.
pub fn indicator_record(
    column_index: usize,
    v: &PortfolioVector,
    d: &DisparityMatrix,
) -> Result<IndicatorRecord> {
    check_dims(v, d)?;
    let n_total = v.len();
    let n_present = v.n_present();
    if n_present == 0 {
        return Ok(IndicatorRecord {
            column_index,
            rao_stirling: 0.0,
            div: 0.0,
            gini: 0.0,
            gini_simpson: 0.0,
            shannon: 0.0,
            h_max: (n_total as f64).log2(),
            variety_relative: 0.0,
            n_total,
            n_present,
            coeff_variation: None,
        });
    }
    let (h, h_max) = shannon(v)?;
    Ok(IndicatorRecord {
        column_index,
        rao_stirling: rao_stirling(v, d)?,
        div: div(v, d)?,
        gini: gini(v)?,
        gini_simpson: gini_simpson(v)?,
        shannon: h,
        h_max,
        variety_relative: relative_variety(v),
        n_total,
        n_present,
        coeff_variation: Some(coefficient_of_variation(v)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(counts: &[f64]) -> PortfolioVector {
        PortfolioVector::new(counts.to_vec()).unwrap()
    }

    fn disparity(raw: &[Vec<f64>]) -> DisparityMatrix {
        DisparityMatrix::validate(raw, 1e-9).unwrap()
    }

    /// 4x4 disparity with d_12 = 0.5 and other off-diagonal cells
    /// deliberately nonzero, to prove absent categories cannot contribute.
    fn d4() -> DisparityMatrix {
        disparity(&[
            vec![0.0, 0.5, 0.9, 0.3],
            vec![0.5, 0.0, 0.7, 0.8],
            vec![0.9, 0.7, 0.0, 0.2],
            vec![0.3, 0.8, 0.2, 0.0],
        ])
    }

    #[test]
    fn portfolio_rejects_bad_input() {
        assert!(PortfolioVector::new(vec![]).is_err());
        assert!(PortfolioVector::new(vec![1.0, -0.5]).is_err());
        assert!(PortfolioVector::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn gini_matches_known_values() {
        assert_eq!(gini(&pv(&[2.0, 2.0])).unwrap(), 0.0);
        assert!((gini(&pv(&[1.0, 2.0, 3.0])).unwrap() - 2.0 / 9.0).abs() < 1e-15);
        assert!((gini(&pv(&[1.0, 3.0])).unwrap() - 0.25).abs() < 1e-15);
        // zeros are excluded from the support
        assert!((gini(&pv(&[0.0, 1.0, 0.0, 3.0])).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn gini_errors_on_empty_support() {
        let err = gini(&pv(&[0.0, 0.0])).unwrap_err();
        assert_eq!(err.to_string(), "gini undefined on empty support");
    }

    #[test]
    fn relative_variety_counts_positive_entries() {
        let mut counts = vec![0.0; 654];
        for c in counts.iter_mut().take(131) {
            *c = 1.0;
        }
        let rv = relative_variety(&pv(&counts));
        assert!((rv - 131.0 / 654.0).abs() < 1e-15);
        assert_eq!(relative_variety(&pv(&[0.0; 10])), 0.0);
        assert_eq!(relative_variety(&pv(&[1.0, 2.0, 3.0, 4.0, 5.0])), 1.0);
    }

    #[test]
    fn gini_simpson_matches_known_values() {
        assert_eq!(gini_simpson(&pv(&[1.0, 0.0, 0.0])).unwrap(), 0.0);
        assert!((gini_simpson(&pv(&[0.5, 0.5])).unwrap() - 0.5).abs() < 1e-15);
        assert!((gini_simpson(&pv(&[3.0, 1.0, 0.0, 0.0])).unwrap() - 0.375).abs() < 1e-15);
        assert!(gini_simpson(&pv(&[0.0, 0.0])).is_err());
    }

    #[test]
    fn shannon_matches_known_values() {
        let (h, h_max) = shannon(&pv(&[1.0, 1.0, 1.0, 1.0])).unwrap();
        assert!((h - 2.0).abs() < 1e-15);
        assert_eq!(h_max, 2.0);
        let (h, h_max) = shannon(&pv(&[5.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(h, 0.0);
        assert_eq!(h_max, 2.0);
        let (h, _) = shannon(&pv(&[3.0, 1.0, 0.0, 0.0])).unwrap();
        let expected = -(0.75f64 * 0.75f64.log2() + 0.25 * 0.25f64.log2());
        assert!((h - expected).abs() < 1e-15);
        assert!((h - 0.8113).abs() < 5e-5);
        assert!(shannon(&pv(&[0.0])).is_err());
    }

    #[test]
    fn rao_stirling_matches_known_values() {
        let zero = disparity(&[vec![0.0, 0.0], vec![0.0, 0.0]]);
        assert_eq!(rao_stirling(&pv(&[3.0, 9.0]), &zero).unwrap(), 0.0);

        let d = disparity(&[vec![0.0, 0.4], vec![0.4, 0.0]]);
        assert!((rao_stirling(&pv(&[0.5, 0.5]), &d).unwrap() - 0.2).abs() < 1e-15);

        assert!((rao_stirling(&pv(&[3.0, 1.0, 0.0, 0.0]), &d4()).unwrap() - 0.1875).abs() < 1e-15);
    }

    #[test]
    fn rao_stirling_checks_dimensions_and_support() {
        let d = disparity(&[vec![0.0, 0.4], vec![0.4, 0.0]]);
        assert!(matches!(
            rao_stirling(&pv(&[1.0, 2.0, 3.0]), &d),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            rao_stirling(&pv(&[0.0, 0.0]), &d),
            Err(Error::EmptySupport { .. })
        ));
    }

    #[test]
    fn mean_disparity_matches_known_values() {
        assert_eq!(mean_disparity(&pv(&[0.0, 7.0, 0.0, 0.0]), &d4()).unwrap(), 0.0);
        assert!((mean_disparity(&pv(&[3.0, 1.0, 0.0, 0.0]), &d4()).unwrap() - 0.5).abs() < 1e-15);

        let all_one = disparity(&[
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ]);
        assert_eq!(mean_disparity(&pv(&[1.0, 5.0, 2.0]), &all_one).unwrap(), 1.0);
    }

    #[test]
    fn div_matches_known_values() {
        assert_eq!(div(&pv(&[2.0, 2.0, 0.0, 0.0]), &d4()).unwrap(), 0.0);
        // 0.5 * 0.25 * 0.5, exact in binary floating point
        assert_eq!(div(&pv(&[3.0, 1.0, 0.0, 0.0]), &d4()).unwrap(), 0.0625);
        assert_eq!(div(&pv(&[0.0; 4]), &d4()).unwrap(), 0.0);
    }

    #[test]
    fn div_is_the_exact_product_of_its_factors() {
        let v = pv(&[5.0, 2.0, 0.0, 1.0]);
        let d = d4();
        let product = relative_variety(&v) * gini(&v).unwrap() * mean_disparity(&v, &d).unwrap();
        assert_eq!(div(&v, &d).unwrap(), product);
    }

    #[test]
    fn coefficient_of_variation_matches_known_values() {
        assert_eq!(coefficient_of_variation(&pv(&[2.0, 2.0, 2.0])).unwrap(), 0.0);
        assert!((coefficient_of_variation(&pv(&[1.0, 3.0])).unwrap() - 0.5).abs() < 1e-15);
        let expected = (2.0f64 / 3.0).sqrt() / 2.0;
        assert!((coefficient_of_variation(&pv(&[1.0, 2.0, 3.0])).unwrap() - expected).abs() < 1e-15);
        assert!(coefficient_of_variation(&pv(&[0.0])).is_err());
    }

    #[test]
    fn record_composes_the_scalar_operations() {
        let r = indicator_record(1, &pv(&[3.0, 1.0, 0.0, 0.0]), &d4()).unwrap();
        assert!((r.rao_stirling - 0.1875).abs() < 1e-15);
        assert_eq!(r.div, 0.0625);
        assert!((r.gini - 0.25).abs() < 1e-15);
        assert!((r.gini_simpson - 0.375).abs() < 1e-15);
        assert!((r.shannon - 0.8113).abs() < 5e-5);
        assert_eq!(r.h_max, 2.0);
        assert_eq!(r.variety_relative, 0.5);
        assert_eq!(r.n_total, 4);
        assert_eq!(r.n_present, 2);
        assert!((r.coeff_variation.unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn record_for_all_zero_portfolio() {
        let r = indicator_record(3, &pv(&[0.0; 4]), &d4()).unwrap();
        assert_eq!(r.column_index, 3);
        assert_eq!(r.rao_stirling, 0.0);
        assert_eq!(r.div, 0.0);
        assert_eq!(r.gini, 0.0);
        assert_eq!(r.gini_simpson, 0.0);
        assert_eq!(r.shannon, 0.0);
        assert_eq!(r.h_max, 2.0);
        assert_eq!(r.variety_relative, 0.0);
        assert_eq!(r.n_present, 0);
        assert_eq!(r.coeff_variation, None);
    }

    #[test]
    fn record_for_uniform_portfolio_with_full_disparity() {
        let all_one = disparity(&[
            vec![0.0, 1.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0, 1.0],
            vec![1.0, 1.0, 0.0, 1.0],
            vec![1.0, 1.0, 1.0, 0.0],
        ]);
        let r = indicator_record(1, &pv(&[1.0; 4]), &all_one).unwrap();
        assert!((r.rao_stirling - 0.75).abs() < 1e-15);
        assert_eq!(r.div, 0.0);
        assert!((r.shannon - 2.0).abs() < 1e-15);
    }

    #[test]
    fn single_positive_entry_limits() {
        let v = pv(&[0.0, 6.0, 0.0, 0.0]);
        let d = d4();
        assert_eq!(rao_stirling(&v, &d).unwrap(), 0.0);
        assert_eq!(div(&v, &d).unwrap(), 0.0);
        assert_eq!(gini_simpson(&v).unwrap(), 0.0);
        assert_eq!(shannon(&v).unwrap().0, 0.0);
        assert_eq!(gini(&v).unwrap(), 0.0);
    }
}
