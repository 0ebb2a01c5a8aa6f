//! Raw samples, scale levels, frequency tables and empirical CDFs.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{invalid, Result, StatError};

/// Level of measurement of a variable, ordered from weakest to strongest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ScaleLevel {
    Nominal,
    Ordinal,
    MetricInterval,
    MetricRatio,
}

impl ScaleLevel {
    pub fn satisfies(self, required: ScaleLevel) -> bool {
        self >= required
    }

    pub fn is_metric(self) -> bool {
        self >= ScaleLevel::MetricInterval
    }
}

impl std::str::FromStr for ScaleLevel {
    type Err = StatError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nominal" | "nom" => Ok(ScaleLevel::Nominal),
            "ordinal" | "ord" => Ok(ScaleLevel::Ordinal),
            "interval" | "metric" | "metr" => Ok(ScaleLevel::MetricInterval),
            "ratio" => Ok(ScaleLevel::MetricRatio),
            other => Err(invalid(format!("unknown scale level '{other}'"))),
        }
    }
}

/// Observations of a single variable together with its scale level.
///
/// Nominal categories are interned: `values` holds integer codes in order
/// of first appearance and `labels[code]` the original text.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RawSample {
    values: Vec<f64>,
    scale: ScaleLevel,
    labels: Option<Vec<String>>,
}

impl RawSample {
    pub fn new(values: Vec<f64>, scale: ScaleLevel) -> Result<Self> {
        if values.is_empty() {
            return Err(StatError::EmptyInput);
        }
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(invalid(format!("non-finite observation {bad}")));
        }
        Ok(Self {
            values,
            scale,
            labels: None,
        })
    }

    /// Interval-scaled metric sample.
    pub fn metric(values: Vec<f64>) -> Result<Self> {
        Self::new(values, ScaleLevel::MetricInterval)
    }

    /// Ratio-scaled metric sample.
    pub fn ratio(values: Vec<f64>) -> Result<Self> {
        Self::new(values, ScaleLevel::MetricRatio)
    }

    pub fn ordinal(values: Vec<f64>) -> Result<Self> {
        Self::new(values, ScaleLevel::Ordinal)
    }

    /// Nominal sample from category labels.
    pub fn nominal<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut codes = HashMap::new();
        let mut names = Vec::new();
        let mut values = Vec::new();
        for label in labels {
            let label = label.as_ref();
            let code = *codes.entry(label.to_string()).or_insert_with(|| {
                names.push(label.to_string());
                names.len() - 1
            });
            values.push(code as f64);
        }
        if values.is_empty() {
            return Err(StatError::EmptyInput);
        }
        Ok(Self {
            values,
            scale: ScaleLevel::Nominal,
            labels: Some(names),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn scale(&self) -> ScaleLevel {
        self.scale
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Text for a value: the interned label for nominal data, otherwise the
    /// number itself.
    pub fn label_of(&self, value: f64) -> String {
        match &self.labels {
            Some(names) => names
                .get(value as usize)
                .cloned()
                .unwrap_or_else(|| value.to_string()),
            None => value.to_string(),
        }
    }

    pub fn require(&self, level: ScaleLevel) -> Result<()> {
        if self.scale.satisfies(level) {
            Ok(())
        } else {
            Err(StatError::ScaleLevel {
                required: level,
                found: self.scale,
            })
        }
    }

    /// Values sorted ascending.
    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v
    }
}

/// One row `(a_j, o_j, h_j)` of a frequency table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrequencyEntry {
    pub value: f64,
    pub count: u64,
    pub relative: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencyDistribution {
    entries: Vec<FrequencyEntry>,
    n: u64,
}

impl FrequencyDistribution {
    /// Builds a table from `(value, count)` pairs; values must be strictly
    /// increasing and counts must not all be zero.
    pub fn from_counts(pairs: &[(f64, u64)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(StatError::EmptyInput);
        }
        if pairs.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(invalid("frequency values must be strictly increasing"));
        }
        let n: u64 = pairs.iter().map(|p| p.1).sum();
        if n == 0 {
            return Err(StatError::EmptyInput);
        }
        let entries = pairs
            .iter()
            .map(|&(value, count)| FrequencyEntry {
                value,
                count,
                relative: count as f64 / n as f64,
            })
            .collect();
        Ok(Self { entries, n })
    }

    pub fn entries(&self) -> &[FrequencyEntry] {
        &self.entries
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Relative frequency of exactly `x` (zero when `x` was not observed).
    pub fn relative_at(&self, x: f64) -> f64 {
        self.entries
            .iter()
            .find(|e| e.value == x)
            .map_or(0.0, |e| e.relative)
    }

    /// Cumulative relative frequency of all values `≤ x`, summed from the
    /// integer counts so that the final step is exactly one.
    pub fn cumulative(&self, x: f64) -> f64 {
        let below: u64 = self
            .entries
            .iter()
            .take_while(|e| e.value <= x)
            .map(|e| e.count)
            .sum();
        below as f64 / self.n as f64
    }
}

/// Counts distinct values. Metric and ordinal samples are sorted by value;
/// nominal codes follow first appearance.
pub fn build_frequency(sample: &RawSample) -> FrequencyDistribution {
    let mut counts: Vec<(f64, u64)> = Vec::new();
    for v in sample.sorted() {
        match counts.last_mut() {
            Some((last, c)) if *last == v => *c += 1,
            _ => counts.push((v, 1)),
        }
    }
    FrequencyDistribution::from_counts(&counts).expect("sample is non-empty and sorted")
}

/// A class interval `[lower, upper)` with its count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bin {
    pub lower: f64,
    pub upper: f64,
    pub width: f64,
    pub count: u64,
    pub relative: f64,
}

impl Bin {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BinnedDistribution {
    bins: Vec<Bin>,
    n: u64,
}

fn check_edges(edges: &[f64]) -> Result<()> {
    if edges.len() < 2 {
        return Err(invalid("at least two bin edges are required"));
    }
    if edges.iter().any(|e| !e.is_finite()) {
        return Err(invalid("bin edges must be finite"));
    }
    if edges.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(invalid("bin edges must be strictly increasing"));
    }
    Ok(())
}

impl BinnedDistribution {
    /// From `edges.len() − 1` counts.
    pub fn from_counts(edges: &[f64], counts: &[u64]) -> Result<Self> {
        check_edges(edges)?;
        if counts.len() + 1 != edges.len() {
            return Err(StatError::LengthMismatch {
                left: counts.len(),
                right: edges.len() - 1,
            });
        }
        let n: u64 = counts.iter().sum();
        if n == 0 {
            return Err(StatError::EmptyInput);
        }
        let bins = edges
            .windows(2)
            .zip(counts)
            .map(|(w, &count)| Bin {
                lower: w[0],
                upper: w[1],
                width: w[1] - w[0],
                count,
                relative: count as f64 / n as f64,
            })
            .collect();
        Ok(Self { bins, n })
    }

    pub fn bins(&self) -> &[Bin] {
        &self.bins
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Lower edge of the first bin.
    pub fn lower(&self) -> f64 {
        self.bins[0].lower
    }

    /// Upper edge of the last bin.
    pub fn upper(&self) -> f64 {
        self.bins[self.bins.len() - 1].upper
    }

    /// Piecewise-linear empirical CDF.
    pub fn cumulative(&self, x: f64) -> f64 {
        if x < self.lower() {
            return 0.0;
        }
        if x >= self.upper() {
            return 1.0;
        }
        let mut below = 0u64;
        for bin in &self.bins {
            if x < bin.upper {
                let inside = bin.relative / bin.width * (x - bin.lower);
                return (below as f64 / self.n as f64 + inside).min(1.0);
            }
            below += bin.count;
        }
        1.0
    }
}

/// Bins with half-open intervals `[u_j, o_j)`; the last bin is also closed
/// at the top.
pub fn build_binned(sample: &RawSample, edges: &[f64]) -> Result<BinnedDistribution> {
    sample.require(ScaleLevel::MetricInterval)?;
    check_edges(edges)?;
    let first = edges[0];
    let last = edges[edges.len() - 1];
    let bins = edges.len() - 1;
    let mut counts = vec![0u64; bins];
    for &v in sample.values() {
        if v < first || v > last {
            return Err(StatError::OutOfRange(v));
        }
        // index of the last edge ≤ v, clamped into the final bin
        let idx = edges.partition_point(|&e| e <= v).saturating_sub(1);
        counts[idx.min(bins - 1)] += 1;
    }
    BinnedDistribution::from_counts(edges, &counts)
}

/// Empirical cumulative distribution function of a frequency table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum EmpiricalCdf {
    Discrete(FrequencyDistribution),
    Binned(BinnedDistribution),
}

impl EmpiricalCdf {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            EmpiricalCdf::Discrete(f) => f.cumulative(x),
            EmpiricalCdf::Binned(b) => b.cumulative(x),
        }
    }

    fn point_mass(&self, x: f64) -> f64 {
        match self {
            EmpiricalCdf::Discrete(f) => f.relative_at(x),
            EmpiricalCdf::Binned(_) => 0.0,
        }
    }

    /// Relative frequency of observations in an interval bounded below by
    /// `c` and above by `d`; infinite bounds give the one-sided rules.
    /// An open lower bound excludes `c`, an open upper bound excludes `d`.
    pub fn interval_prob(&self, lower_open: bool, c: f64, upper_open: bool, d: f64) -> Result<f64> {
        if c.is_nan() || d.is_nan() {
            return Err(invalid("interval bounds must not be NaN"));
        }
        if c > d {
            return Err(invalid(format!("interval lower bound {c} exceeds upper bound {d}")));
        }
        let mut h = self.eval(d) - self.eval(c);
        if !lower_open {
            h += self.point_mass(c);
        }
        if upper_open {
            h -= self.point_mass(d);
        }
        Ok(h.clamp(0.0, 1.0))
    }
}

/// Ranks 1..n with tied values sharing the mean of their rank block.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // positions i..j hold ranks i+1..=j
        let shared = (i + 1 + j) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = shared;
        }
        i = j;
    }
    ranks
}

/// Mid-rank transform of an ordinal or metric sample.
pub fn rank_transform(sample: &RawSample) -> Result<Vec<f64>> {
    sample.require(ScaleLevel::Ordinal)?;
    Ok(midranks(sample.values()))
}
