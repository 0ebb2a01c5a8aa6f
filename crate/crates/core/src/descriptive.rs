//! Univariate descriptive measures: location, dispersion, shape and
//! concentration.

use serde::Serialize;

use crate::data::{build_frequency, BinnedDistribution, FrequencyDistribution, RawSample, ScaleLevel};
use crate::error::{degenerate, insufficient, invalid, Measure, Result, StatError};

/// Values attaining the highest relative frequency, in table order.
pub fn mode(freq: &FrequencyDistribution) -> Vec<f64> {
    let max = freq.entries().iter().map(|e| e.count).max().unwrap_or(0);
    freq.entries()
        .iter()
        .filter(|e| e.count == max)
        .map(|e| e.value)
        .collect()
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("quantile level must lie in (0, 1), got {alpha}")))
    }
}

/// Order-statistic α-quantile of already sorted data.
///
/// `x_(k)` with `k` the smallest integer above `nα` when `nα` is not an
/// integer, otherwise the mean of `x_(nα)` and `x_(nα+1)`.
pub fn quantile_sorted(sorted: &[f64], alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if sorted.is_empty() {
        return Err(StatError::EmptyInput);
    }
    let n = sorted.len();
    let na = n as f64 * alpha;
    let nearest = na.round();
    if (na - nearest).abs() <= 1e-9 * na.max(1.0) && nearest >= 1.0 {
        let k = nearest as usize;
        if k < n {
            return Ok(0.5 * (sorted[k - 1] + sorted[k]));
        }
    }
    let k = (na.floor() as usize + 1).min(n);
    Ok(sorted[k - 1])
}

/// α-quantile of a raw ordinal or metric sample.
pub fn quantile(sample: &RawSample, alpha: f64) -> Result<f64> {
    sample.require(ScaleLevel::Ordinal)?;
    quantile_sorted(&sample.sorted(), alpha)
}

pub fn median(sample: &RawSample) -> Result<f64> {
    quantile(sample, 0.5)
}

/// α-quantile of binned data by inverting the piecewise-linear ECDF.
pub fn binned_quantile(binned: &BinnedDistribution, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let n = binned.n() as f64;
    let mut below = 0u64;
    for bin in binned.bins() {
        let before = below as f64 / n;
        below += bin.count;
        if below as f64 / n >= alpha && bin.count > 0 {
            return Ok(bin.lower + bin.width / bin.relative * (alpha - before));
        }
    }
    Ok(binned.upper())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiveNumberSummary {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

pub fn five_number_summary(sample: &RawSample) -> Result<FiveNumberSummary> {
    sample.require(ScaleLevel::Ordinal)?;
    let s = sample.sorted();
    Ok(FiveNumberSummary {
        min: s[0],
        q1: quantile_sorted(&s, 0.25)?,
        median: quantile_sorted(&s, 0.5)?,
        q3: quantile_sorted(&s, 0.75)?,
        max: s[s.len() - 1],
    })
}

pub(crate) fn mean_of(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Two-pass sample variance with the `n − 1` denominator.
pub fn variance_of(values: &[f64]) -> Result<f64> {
    if values.len() < 2 {
        return Err(insufficient("variance undefined for fewer than two observations"));
    }
    let m = mean_of(values);
    let ss: f64 = values.iter().map(|x| (x - m) * (x - m)).sum();
    Ok(ss / (values.len() - 1) as f64)
}

/// Sample variance by the shift theorem, (Σx² − n x̄²)/(n − 1).
pub fn variance_shift_theorem(values: &[f64]) -> Result<f64> {
    if values.len() < 2 {
        return Err(insufficient("variance undefined for fewer than two observations"));
    }
    let n = values.len() as f64;
    let m = mean_of(values);
    let sq: f64 = values.iter().map(|x| x * x).sum();
    Ok((sq - n * m * m) / (n - 1.0))
}

pub fn arithmetic_mean(sample: &RawSample) -> Result<f64> {
    sample.require(ScaleLevel::MetricInterval)?;
    Ok(mean_of(sample.values()))
}

/// Σ a_j h_j.
pub fn mean_from_frequency(freq: &FrequencyDistribution) -> f64 {
    freq.entries().iter().map(|e| e.value * e.relative).sum()
}

/// Sample variance from a frequency table, (n/(n−1)) Σ (a_j − x̄)² h_j.
pub fn variance_from_frequency(freq: &FrequencyDistribution) -> Result<f64> {
    let n = freq.n() as f64;
    if freq.n() < 2 {
        return Err(insufficient("variance undefined for fewer than two observations"));
    }
    let m = mean_from_frequency(freq);
    let s: f64 = freq
        .entries()
        .iter()
        .map(|e| (e.value - m) * (e.value - m) * e.relative)
        .sum();
    Ok(n / (n - 1.0) * s)
}

/// Σ w_i x_i with weights in [0, 1] summing to one.
pub fn weighted_mean(values: &[f64], weights: &[f64]) -> Result<f64> {
    if values.len() != weights.len() {
        return Err(StatError::LengthMismatch {
            left: values.len(),
            right: weights.len(),
        });
    }
    if values.is_empty() {
        return Err(StatError::EmptyInput);
    }
    if weights.iter().any(|w| !(0.0..=1.0).contains(w)) {
        return Err(invalid("weights must lie in [0, 1]"));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(invalid(format!("weights sum to {total}, not 1")));
    }
    Ok(values.iter().zip(weights).map(|(x, w)| x * w).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Dispersion {
    pub range: f64,
    pub iqr: f64,
    pub variance: f64,
    pub std_dev: f64,
    /// Only for ratio-scaled data with a positive mean.
    pub coeff_variation: Option<f64>,
}

pub fn dispersion(sample: &RawSample) -> Result<Dispersion> {
    sample.require(ScaleLevel::MetricInterval)?;
    let values = sample.values();
    let variance = variance_of(values)?;
    let s = sample.sorted();
    let mean = mean_of(values);
    let std_dev = variance.sqrt();
    let coeff_variation = (sample.scale() == ScaleLevel::MetricRatio && mean > 0.0).then(|| std_dev / mean);
    Ok(Dispersion {
        range: s[s.len() - 1] - s[0],
        iqr: quantile_sorted(&s, 0.75)? - quantile_sorted(&s, 0.25)?,
        variance,
        std_dev,
        coeff_variation,
    })
}

/// Midpoint variance of binned data plus the within-bin uniform correction
/// (1/12)(n/(n−1)) Σ b_j² h_j.
pub fn variance_from_binned(binned: &BinnedDistribution) -> Result<f64> {
    if binned.n() < 2 {
        return Err(insufficient("variance undefined for fewer than two observations"));
    }
    let n = binned.n() as f64;
    let factor = n / (n - 1.0);
    let mean: f64 = binned.bins().iter().map(|b| b.midpoint() * b.relative).sum();
    let spread: f64 = binned
        .bins()
        .iter()
        .map(|b| (b.midpoint() - mean).powi(2) * b.relative)
        .sum();
    let correction: f64 = binned.bins().iter().map(|b| b.width * b.width * b.relative).sum();
    Ok(factor * spread + factor * correction / 12.0)
}

/// z-scores (x_i − x̄)/s.
pub fn standardize(sample: &RawSample) -> Result<Vec<f64>> {
    sample.require(ScaleLevel::MetricInterval)?;
    standardize_values(sample.values())
}

pub(crate) fn standardize_values(values: &[f64]) -> Result<Vec<f64>> {
    let s = variance_of(values)?.sqrt();
    if !(s > 0.0) {
        return Err(degenerate("degenerate sample with zero variance"));
    }
    let m = mean_of(values);
    Ok(values.iter().map(|x| (x - m) / s).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Shape {
    /// Skewness g₁.
    pub skewness: Measure,
    /// Excess kurtosis g₂.
    pub excess_kurtosis: Measure,
}

/// Skewness and excess kurtosis in their spreadsheet definitions, built on
/// z-scores with the `n − 1` standard deviation.
pub fn shape(sample: &RawSample) -> Result<Shape> {
    sample.require(ScaleLevel::MetricInterval)?;
    let values = sample.values();
    let n = values.len() as f64;
    let z = match standardize_values(values) {
        Ok(z) => z,
        Err(e) => {
            return Ok(Shape {
                skewness: Measure::absent(e.to_string()),
                excess_kurtosis: Measure::absent(e.to_string()),
            })
        }
    };
    let skewness = if values.len() > 2 {
        let s3: f64 = z.iter().map(|v| v.powi(3)).sum();
        Measure::Value(n / ((n - 1.0) * (n - 2.0)) * s3)
    } else {
        Measure::absent("skewness requires n > 2")
    };
    let excess_kurtosis = if values.len() > 3 {
        let s4: f64 = z.iter().map(|v| v.powi(4)).sum();
        Measure::Value(
            n * (n + 1.0) / ((n - 1.0) * (n - 2.0) * (n - 3.0)) * s4
                - 3.0 * (n - 1.0).powi(2) / ((n - 2.0) * (n - 3.0)),
        )
    } else {
        Measure::absent("excess kurtosis requires n > 3")
    };
    Ok(Shape {
        skewness,
        excess_kurtosis,
    })
}

/// Lorenz curve coordinates `(k_i, l_i)`, starting at the origin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LorenzCurve {
    pub points: Vec<(f64, f64)>,
}

fn check_concentration(sample: &RawSample) -> Result<()> {
    sample.require(ScaleLevel::MetricRatio)?;
    if let Some(&v) = sample.values().iter().find(|v| **v < 0.0) {
        return Err(invalid(format!("concentration measures need non-negative values, found {v}")));
    }
    if sample.values().iter().sum::<f64>() <= 0.0 {
        return Err(degenerate("total sum is zero"));
    }
    Ok(())
}

pub fn lorenz_points(sample: &RawSample) -> Result<LorenzCurve> {
    check_concentration(sample)?;
    let freq = build_frequency(sample);
    let n = freq.n() as f64;
    let total: f64 = sample.values().iter().sum();
    let mut points = vec![(0.0, 0.0)];
    let mut units = 0u64;
    let mut share = 0.0;
    for e in freq.entries() {
        units += e.count;
        share += e.value * e.count as f64;
        points.push((units as f64 / n, (share / total).min(1.0)));
    }
    if let Some(last) = points.last_mut() {
        last.1 = 1.0;
    }
    Ok(LorenzCurve { points })
}

/// Normalised Gini coefficient G₊ of a ratio-scaled sample.
pub fn gini_normalized(sample: &RawSample) -> Result<f64> {
    check_concentration(sample)?;
    if sample.n() < 2 {
        return Err(insufficient("Gini coefficient requires n >= 2"));
    }
    let curve = lorenz_points(sample)?;
    gini_from_lorenz(&curve.points, Some(sample.n() as u64))
}

/// Gini coefficient from pre-aggregated Lorenz coordinates.
///
/// With `n = Some(n)` the result carries the `n/(n−1)` normalisation; with
/// `None` the factor is one, which is the large-population limit.
pub fn gini_from_lorenz(points: &[(f64, f64)], n: Option<u64>) -> Result<f64> {
    if points.len() < 2 {
        return Err(insufficient("a Lorenz curve needs at least two points"));
    }
    let first = points[0];
    let last = points[points.len() - 1];
    if first != (0.0, 0.0) || (last.0 - 1.0).abs() > 1e-12 || (last.1 - 1.0).abs() > 1e-12 {
        return Err(invalid("Lorenz curve must run from (0,0) to (1,1)"));
    }
    if points.windows(2).any(|w| w[1].0 < w[0].0 || w[1].1 < w[0].1) {
        return Err(invalid("Lorenz coordinates must be non-decreasing"));
    }
    let sum: f64 = points
        .windows(2)
        .map(|w| (w[0].0 + w[1].0) * (w[1].1 - w[0].1))
        .sum();
    let factor = match n {
        Some(n) if n >= 2 => n as f64 / (n as f64 - 1.0),
        Some(_) => return Err(insufficient("Gini normalisation requires n >= 2")),
        None => 1.0,
    };
    Ok(factor * (sum - 1.0))
}
