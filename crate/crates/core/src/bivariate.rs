//! Joint distributions, association measures and descriptive simple linear
//! regression.

use serde::Serialize;

use crate::data::{midranks, RawSample, ScaleLevel};
use crate::descriptive::mean_of;
use crate::error::{degenerate, insufficient, invalid, Result, StatError};

/// A k×l cross tabulation of joint absolute frequencies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContingencyTable {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    counts: Vec<Vec<u64>>,
    row_totals: Vec<u64>,
    col_totals: Vec<u64>,
    n: u64,
}

impl ContingencyTable {
    pub fn from_counts(counts: Vec<Vec<u64>>) -> Result<Self> {
        let rows = counts.len();
        let cols = counts.first().map_or(0, Vec::len);
        let row_labels = (1..=rows).map(|i| i.to_string()).collect();
        let col_labels = (1..=cols).map(|j| j.to_string()).collect();
        Self::with_labels(row_labels, col_labels, counts)
    }

    pub fn with_labels(row_labels: Vec<String>, col_labels: Vec<String>, counts: Vec<Vec<u64>>) -> Result<Self> {
        if counts.is_empty() || counts[0].is_empty() {
            return Err(StatError::EmptyInput);
        }
        let cols = counts[0].len();
        if counts.iter().any(|r| r.len() != cols) {
            return Err(invalid("contingency table rows differ in length"));
        }
        if row_labels.len() != counts.len() || col_labels.len() != cols {
            return Err(invalid("label count does not match table shape"));
        }
        let row_totals: Vec<u64> = counts.iter().map(|r| r.iter().sum()).collect();
        let col_totals: Vec<u64> = (0..cols).map(|j| counts.iter().map(|r| r[j]).sum()).collect();
        let n = row_totals.iter().sum();
        if n == 0 {
            return Err(StatError::EmptyInput);
        }
        Ok(Self {
            row_labels,
            col_labels,
            counts,
            row_totals,
            col_totals,
            n,
        })
    }

    pub fn rows(&self) -> usize {
        self.counts.len()
    }

    pub fn cols(&self) -> usize {
        self.counts[0].len()
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn row_totals(&self) -> &[u64] {
        &self.row_totals
    }

    pub fn col_totals(&self) -> &[u64] {
        &self.col_totals
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Counts expected under independence, o_i+ o_+j / n.
    pub fn expected(&self) -> Vec<Vec<f64>> {
        let n = self.n as f64;
        self.row_totals
            .iter()
            .map(|&ri| self.col_totals.iter().map(|&cj| ri as f64 * cj as f64 / n).collect())
            .collect()
    }

    /// Whether every expected count reaches 5.
    pub fn expected_counts_adequate(&self) -> bool {
        self.expected().iter().flatten().all(|&e| e >= 5.0)
    }
}

/// Cross-tabulates two equally long samples of any scale level.
pub fn contingency_from_pairs(xs: &RawSample, ys: &RawSample) -> Result<ContingencyTable> {
    if xs.n() != ys.n() {
        return Err(StatError::LengthMismatch {
            left: xs.n(),
            right: ys.n(),
        });
    }
    let cats = |s: &RawSample| {
        let mut v = s.sorted();
        v.dedup();
        v
    };
    let (rx, cy) = (cats(xs), cats(ys));
    let mut counts = vec![vec![0u64; cy.len()]; rx.len()];
    for (x, y) in xs.values().iter().zip(ys.values()) {
        let i = rx.partition_point(|v| v < x);
        let j = cy.partition_point(|v| v < y);
        counts[i][j] += 1;
    }
    ContingencyTable::with_labels(
        rx.iter().map(|&v| xs.label_of(v)).collect(),
        cy.iter().map(|&v| ys.label_of(v)).collect(),
        counts,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conditioning {
    /// h(a_i | b_j): each column sums to one.
    RowGivenCol,
    /// h(b_j | a_i): each row sums to one.
    ColGivenRow,
}

pub fn conditional_dist(table: &ContingencyTable, given: Conditioning) -> Result<Vec<Vec<f64>>> {
    let c = table.counts();
    match given {
        Conditioning::ColGivenRow => c
            .iter()
            .zip(table.row_totals())
            .enumerate()
            .map(|(i, (row, &tot))| {
                if tot == 0 {
                    return Err(degenerate(format!("row {} has zero marginal", table.row_labels[i])));
                }
                Ok(row.iter().map(|&o| o as f64 / tot as f64).collect())
            })
            .collect(),
        Conditioning::RowGivenCol => {
            if let Some(j) = table.col_totals().iter().position(|&t| t == 0) {
                return Err(degenerate(format!("column {} has zero marginal", table.col_labels[j])));
            }
            Ok(c.iter()
                .map(|row| {
                    row.iter()
                        .zip(table.col_totals())
                        .map(|(&o, &t)| o as f64 / t as f64)
                        .collect()
                })
                .collect())
        }
    }
}

/// Pearson's descriptive χ² statistic.
pub fn chi2_descriptive(table: &ContingencyTable) -> Result<f64> {
    if table.row_totals().contains(&0) || table.col_totals().contains(&0) {
        return Err(degenerate("table has an empty row or column"));
    }
    let expected = table.expected();
    Ok(table
        .counts()
        .iter()
        .zip(&expected)
        .flat_map(|(o, e)| o.iter().zip(e))
        .map(|(&o, &e)| (o as f64 - e).powi(2) / e)
        .sum())
}

/// Cramér's V = √(χ²/(n(min(k,l) − 1))).
pub fn cramers_v(table: &ContingencyTable) -> Result<f64> {
    let chi2 = chi2_descriptive(table)?;
    let m = table.rows().min(table.cols());
    if m < 2 {
        return Err(degenerate("Cramér's V needs at least two rows and two columns"));
    }
    let max = table.n() as f64 * (m - 1) as f64;
    Ok((chi2 / max).sqrt().min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationStrength {
    None,
    VeryWeak,
    Weak,
    ModeratelyStrong,
    Strong,
    VeryStrong,
    Perfect,
}

/// Rule-of-thumb label for |r| or |r_S|. The value 0.8 counts as very
/// strong.
pub fn correlation_strength(r: f64) -> CorrelationStrength {
    let a = r.abs();
    match a {
        _ if a == 0.0 => CorrelationStrength::None,
        _ if a < 0.2 => CorrelationStrength::VeryWeak,
        _ if a < 0.4 => CorrelationStrength::Weak,
        _ if a < 0.6 => CorrelationStrength::ModeratelyStrong,
        _ if a < 0.8 => CorrelationStrength::Strong,
        _ if a < 1.0 => CorrelationStrength::VeryStrong,
        _ => CorrelationStrength::Perfect,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AssociationStrength {
    Weak,
    ModeratelyStrong,
    Strong,
}

/// Rule-of-thumb label for Cramér's V.
pub fn association_strength(v: f64) -> AssociationStrength {
    if v < 0.2 {
        AssociationStrength::Weak
    } else if v < 0.6 {
        AssociationStrength::ModeratelyStrong
    } else {
        AssociationStrength::Strong
    }
}

fn check_pair(xs: &[f64], ys: &[f64]) -> Result<()> {
    if xs.len() != ys.len() {
        return Err(StatError::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(insufficient("need at least two pairs"));
    }
    Ok(())
}

/// s_XY = (1/(n−1)) Σ (x_i − x̄)(y_i − ȳ).
pub fn sample_covariance(xs: &[f64], ys: &[f64]) -> Result<f64> {
    check_pair(xs, ys)?;
    let (mx, my) = (mean_of(xs), mean_of(ys));
    let s: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(s / (xs.len() - 1) as f64)
}

/// Covariance by the shift theorem, (Σ x_i y_i − n x̄ ȳ)/(n − 1).
pub fn sample_covariance_shift(xs: &[f64], ys: &[f64]) -> Result<f64> {
    check_pair(xs, ys)?;
    let n = xs.len() as f64;
    let s: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    Ok((s - n * mean_of(xs) * mean_of(ys)) / (n - 1.0))
}

fn check_columns(columns: &[Vec<f64>]) -> Result<()> {
    if columns.is_empty() {
        return Err(StatError::EmptyInput);
    }
    let n = columns[0].len();
    if let Some(c) = columns.iter().find(|c| c.len() != n) {
        return Err(StatError::LengthMismatch { left: n, right: c.len() });
    }
    Ok(())
}

/// m×m covariance matrix of m equally long columns.
pub fn covariance_matrix(columns: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    check_columns(columns)?;
    let m = columns.len();
    let mut out = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in i..m {
            let c = sample_covariance(&columns[i], &columns[j])?;
            out[i][j] = c;
            out[j][i] = c;
        }
    }
    Ok(out)
}

/// Bravais–Pearson correlation coefficient r = s_XY/(s_X s_Y).
pub fn pearson_r(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let sxy = sample_covariance(xs, ys)?;
    let sx = sample_covariance(xs, xs)?.sqrt();
    let sy = sample_covariance(ys, ys)?.sqrt();
    if !(sx > 0.0) || !(sy > 0.0) {
        return Err(degenerate("constant variable"));
    }
    Ok((sxy / (sx * sy)).clamp(-1.0, 1.0))
}

pub fn correlation_matrix(columns: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    check_columns(columns)?;
    let m = columns.len();
    let mut out = vec![vec![1.0; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let r = pearson_r(&columns[i], &columns[j])?;
            out[i][j] = r;
            out[j][i] = r;
        }
        // diagonal entries still require a non-constant column
        if !(sample_covariance(&columns[i], &columns[i])? > 0.0) {
            return Err(degenerate("constant variable"));
        }
    }
    Ok(out)
}

/// Inverse of the 2×2 correlation matrix [[1, r], [r, 1]].
pub fn correlation_matrix_inverse_2x2(r: f64) -> Result<[[f64; 2]; 2]> {
    if !(r.abs() < 1.0) {
        return Err(degenerate("singular correlation matrix"));
    }
    let f = 1.0 / (1.0 - r * r);
    Ok([[f, -r * f], [-r * f, f]])
}

fn ordinal_pair(xs: &RawSample, ys: &RawSample) -> Result<()> {
    xs.require(ScaleLevel::Ordinal)?;
    ys.require(ScaleLevel::Ordinal)?;
    check_pair(xs.values(), ys.values())
}

/// Spearman's rank correlation from mid-ranks, via the rank covariance.
pub fn spearman_rs(xs: &RawSample, ys: &RawSample) -> Result<f64> {
    ordinal_pair(xs, ys)?;
    let (rx, ry) = (midranks(xs.values()), midranks(ys.values()));
    let mean_rank = (xs.n() as f64 + 1.0) / 2.0;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        let (da, db) = (a - mean_rank, b - mean_rank);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return Err(degenerate("all observations tied"));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// 1 − 6 Σ d_i² / (n(n² − 1)), valid only without ties.
pub fn spearman_shortcut(xs: &RawSample, ys: &RawSample) -> Result<f64> {
    ordinal_pair(xs, ys)?;
    let (rx, ry) = (midranks(xs.values()), midranks(ys.values()));
    let tied = |r: &[f64]| r.iter().any(|v| v.fract() != 0.0) || {
        let mut s = r.to_vec();
        s.sort_by(f64::total_cmp);
        s.windows(2).any(|w| w[0] == w[1])
    };
    if tied(&rx) || tied(&ry) {
        return Err(invalid("shortcut formula requires untied ranks"));
    }
    let n = xs.n() as f64;
    let d2: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(1.0 - 6.0 * d2 / (n * (n * n - 1.0)))
}

/// Least-squares line ŷ = a + b x.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionFit {
    pub a: f64,
    pub b: f64,
    /// Coefficient of determination B.
    pub r_squared: f64,
    pub predicted: Vec<f64>,
    pub residuals: Vec<f64>,
    pub n: usize,
    pub x_mean: f64,
    pub y_mean: f64,
    pub s_x: f64,
    pub s_y: f64,
    pub x_min: f64,
    pub x_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Prediction {
    pub value: f64,
    /// Set when x lies outside the observed range.
    pub extrapolated: bool,
}

impl RegressionFit {
    pub fn predict(&self, x: f64) -> Prediction {
        Prediction {
            value: self.a + self.b * x,
            extrapolated: x < self.x_min || x > self.x_max,
        }
    }

    /// Σ (y − ȳ)².
    pub fn total_ss(&self) -> f64 {
        self.predicted
            .iter()
            .zip(&self.residuals)
            .map(|(p, e)| (p + e - self.y_mean).powi(2))
            .sum()
    }

    /// Σ (ŷ − ȳ)².
    pub fn explained_ss(&self) -> f64 {
        self.predicted.iter().map(|p| (p - self.y_mean).powi(2)).sum()
    }

    /// Σ e².
    pub fn residual_ss(&self) -> f64 {
        self.residuals.iter().map(|e| e * e).sum()
    }
}

pub fn ols_fit(xs: &[f64], ys: &[f64]) -> Result<RegressionFit> {
    check_pair(xs, ys)?;
    if xs.len() < 3 {
        return Err(insufficient("regression needs at least three pairs"));
    }
    let sxx = sample_covariance(xs, xs)?;
    if !(sxx > 0.0) {
        return Err(degenerate("constant regressor"));
    }
    let syy = sample_covariance(ys, ys)?;
    let sxy = sample_covariance(xs, ys)?;
    let (x_mean, y_mean) = (mean_of(xs), mean_of(ys));
    let b = sxy / sxx;
    let a = y_mean - b * x_mean;
    let predicted: Vec<f64> = xs.iter().map(|x| a + b * x).collect();
    let residuals: Vec<f64> = ys.iter().zip(&predicted).map(|(y, p)| y - p).collect();
    let explained: f64 = predicted.iter().map(|p| (p - y_mean).powi(2)).sum();
    let total: f64 = ys.iter().map(|y| (y - y_mean).powi(2)).sum();
    let r_squared = if total > 0.0 { (explained / total).min(1.0) } else { 0.0 };
    Ok(RegressionFit {
        a,
        b,
        r_squared,
        predicted,
        residuals,
        n: xs.len(),
        x_mean,
        y_mean,
        s_x: sxx.sqrt(),
        s_y: syy.sqrt(),
        x_min: xs.iter().copied().fold(f64::INFINITY, f64::min),
        x_max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}
