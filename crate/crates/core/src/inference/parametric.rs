use serde::Serialize;

use super::{check_alpha, ConfidenceInterval, Parameter, TailKind, TestOutcome};
use crate::bivariate::{chi2_descriptive, cramers_v, ContingencyTable};
use crate::descriptive::{mean_of, variance_of};
use crate::distributions::Distribution;
use crate::error::{degenerate, insufficient, invalid, Result, StatError};

fn check_level(level: f64) -> Result<()> {
    if level > 0.0 && level < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("confidence level must lie in (0, 1), got {level}")))
    }
}

fn need(values: &[f64], min: usize, what: &str) -> Result<()> {
    if values.len() < min {
        return Err(insufficient(format!("{what} requires n >= {min}, got {}", values.len())));
    }
    Ok(())
}

/// Two-sided interval X̄ ± t_{n−1;1−α/2} S/√n.
pub fn ci_mean(values: &[f64], level: f64) -> Result<ConfidenceInterval> {
    check_level(level)?;
    need(values, 2, "confidence interval for the mean")?;
    let n = values.len() as f64;
    let mean = mean_of(values);
    let s = variance_of(values)?.sqrt();
    let t = Distribution::student_t(n - 1.0)?.quantile(1.0 - (1.0 - level) / 2.0)?;
    let half = t * s / n.sqrt();
    Ok(ConfidenceInterval {
        parameter: Parameter::Mean,
        estimate: mean,
        lower: mean - half,
        upper: mean + half,
        level,
    })
}

/// Two-sided interval [(n−1)S²/χ²_{n−1;1−α/2}, (n−1)S²/χ²_{n−1;α/2}].
pub fn ci_variance(values: &[f64], level: f64) -> Result<ConfidenceInterval> {
    check_level(level)?;
    need(values, 2, "confidence interval for the variance")?;
    let n = values.len() as f64;
    let s2 = variance_of(values)?;
    let chi = Distribution::chi_square(n - 1.0)?;
    let alpha = 1.0 - level;
    Ok(ConfidenceInterval {
        parameter: Parameter::Variance,
        estimate: s2,
        lower: (n - 1.0) * s2 / chi.quantile(1.0 - alpha / 2.0)?,
        upper: (n - 1.0) * s2 / chi.quantile(alpha / 2.0)?,
        level,
    })
}

/// Smallest n with n ≥ (t_{n−1;1−α/2}/δ)² σ², so that the half-width of the
/// mean interval stays below `delta_max` whenever S² ≤ `sigma2_max`.
///
/// The search starts from `df_hint + 1` when given.
pub fn min_sample_size(delta_max: f64, sigma2_max: f64, level: f64, df_hint: Option<u64>) -> Result<u64> {
    check_level(level)?;
    if !(delta_max > 0.0) || !(sigma2_max > 0.0) {
        return Err(invalid("delta_max and sigma_max^2 must be positive"));
    }
    let p = 1.0 - (1.0 - level) / 2.0;
    let enough = |n: u64| -> Result<bool> {
        let t = Distribution::student_t((n - 1) as f64)?.quantile(p)?;
        Ok(n as f64 >= (t / delta_max).powi(2) * sigma2_max)
    };
    let mut hi = df_hint.map_or(2, |d| d.saturating_add(1)).max(2);
    let mut lo = 1;
    while !enough(hi)? {
        lo = hi;
        hi = hi.checked_mul(2).filter(|&h| h < 1 << 50).ok_or_else(|| {
            StatError::Overflow("required sample size exceeds 2^50".to_string())
        })?;
    }
    // enough(lo) is false (or lo = 1), enough(hi) is true
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if enough(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// χ² goodness-of-fit test of observed counts against category
/// probabilities, with `estimated` parameters fitted from the data.
pub fn chi2_gof(observed: &[u64], probs: &[f64], estimated: usize, alpha: f64) -> Result<TestOutcome> {
    if observed.len() != probs.len() {
        return Err(StatError::LengthMismatch {
            left: observed.len(),
            right: probs.len(),
        });
    }
    let k = observed.len();
    if k < 2 {
        return Err(insufficient("goodness-of-fit test needs at least two categories"));
    }
    if probs.iter().any(|p| !(*p > 0.0 && *p <= 1.0)) {
        return Err(invalid("category probabilities must lie in (0, 1]"));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(invalid(format!("category probabilities sum to {total}, not 1")));
    }
    if k <= 1 + estimated {
        return Err(invalid(format!("degrees of freedom k-1-r = {} must be positive", k as i64 - 1 - estimated as i64)));
    }
    let n: u64 = observed.iter().sum();
    if n == 0 {
        return Err(StatError::EmptyInput);
    }
    let n = n as f64;
    let mut stat = 0.0;
    let mut small = false;
    for (&o, &p) in observed.iter().zip(probs) {
        let e = n * p;
        small |= e < 5.0;
        stat += (o as f64 - e).powi(2) / e;
    }
    let mut notes = Vec::new();
    if small {
        notes.push("an expected count is below 5; the chi-square approximation may be poor".to_string());
    }
    let df = (k - 1 - estimated) as f64;
    TestOutcome::new("chi-square goodness-of-fit", stat, Distribution::chi_square(df)?, TailKind::RightSided, alpha, notes)
}

/// One-sample test of H₀: μ = μ₀ with T = (X̄ − μ₀)/(S/√n); the null law is
/// t(n−1) below n = 50 and N(0,1) from there on.
pub fn t_test_one_sample(values: &[f64], mu0: f64, tail: TailKind, alpha: f64) -> Result<TestOutcome> {
    need(values, 2, "one-sample t-test")?;
    let n = values.len();
    let s = variance_of(values)?.sqrt();
    if !(s > 0.0) {
        return Err(degenerate("sample standard deviation is zero"));
    }
    let t = (mean_of(values) - mu0) / (s / (n as f64).sqrt());
    if n < 50 {
        TestOutcome::new("one-sample t-test", t, Distribution::student_t((n - 1) as f64)?, tail, alpha, Vec::new())
    } else {
        TestOutcome::new(
            "one-sample z-test",
            t,
            Distribution::standard_normal(),
            tail,
            alpha,
            vec!["n >= 50: standard normal null distribution".to_string()],
        )
    }
}

/// Test of H₀: σ² = σ₀² with (n−1)S²/σ₀² against χ²(n−1).
pub fn chi2_variance_test(values: &[f64], sigma0_sq: f64, tail: TailKind, alpha: f64) -> Result<TestOutcome> {
    if !(sigma0_sq > 0.0) {
        return Err(invalid(format!("hypothesised variance must be positive, got {sigma0_sq}")));
    }
    need(values, 2, "chi-square variance test")?;
    let n = values.len() as f64;
    let stat = (n - 1.0) * variance_of(values)? / sigma0_sq;
    TestOutcome::new("chi-square variance test", stat, Distribution::chi_square(n - 1.0)?, tail, alpha, Vec::new())
}

/// Independent two-sample t-test with standard error √(S₁²/n₁ + S₂²/n₂).
/// With `equal_var` the df are n₁ + n₂ − 2, otherwise Welch's real-valued
/// approximation.
pub fn t_test_two_independent(
    x1: &[f64],
    x2: &[f64],
    equal_var: bool,
    tail: TailKind,
    alpha: f64,
) -> Result<TestOutcome> {
    need(x1, 2, "two-sample t-test (group 1)")?;
    need(x2, 2, "two-sample t-test (group 2)")?;
    let (n1, n2) = (x1.len() as f64, x2.len() as f64);
    let (v1, v2) = (variance_of(x1)? / n1, variance_of(x2)? / n2);
    if !(v1 + v2 > 0.0) {
        return Err(degenerate("both samples are constant"));
    }
    let t = (mean_of(x1) - mean_of(x2)) / (v1 + v2).sqrt();
    let df = if equal_var {
        n1 + n2 - 2.0
    } else {
        (v1 + v2).powi(2) / (v1 * v1 / (n1 - 1.0) + v2 * v2 / (n2 - 1.0))
    };
    let name = if equal_var { "two-sample t-test" } else { "Welch two-sample t-test" };
    TestOutcome::new(name, t, Distribution::student_t(df)?, tail, alpha, Vec::new())
}

/// F = S₁²/S₂² against F(n₁−1, n₂−1).
pub fn f_test_two_variances(x1: &[f64], x2: &[f64], tail: TailKind, alpha: f64) -> Result<TestOutcome> {
    need(x1, 2, "F-test (group 1)")?;
    need(x2, 2, "F-test (group 2)")?;
    let s2 = variance_of(x2)?;
    if !(s2 > 0.0) {
        return Err(degenerate("denominator sample variance is zero"));
    }
    let f = variance_of(x1)? / s2;
    let null = Distribution::fisher_f((x1.len() - 1) as f64, (x2.len() - 1) as f64)?;
    TestOutcome::new("F-test for two variances", f, null, tail, alpha, Vec::new())
}

/// Paired t-test on D = x_A − x_B against μ₀ = 0.
pub fn t_test_paired(xa: &[f64], xb: &[f64], tail: TailKind, alpha: f64) -> Result<TestOutcome> {
    if xa.len() != xb.len() {
        return Err(StatError::LengthMismatch {
            left: xa.len(),
            right: xb.len(),
        });
    }
    need(xa, 2, "paired t-test")?;
    let d: Vec<f64> = xa.iter().zip(xb).map(|(a, b)| a - b).collect();
    let s = variance_of(&d)?.sqrt();
    if !(s > 0.0) {
        return Err(degenerate("differences are constant"));
    }
    let n = d.len() as f64;
    let t = mean_of(&d) / (s / n.sqrt());
    TestOutcome::new("paired t-test", t, Distribution::student_t(n - 1.0)?, tail, alpha, Vec::new())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableTestMode {
    Homogeneity,
    Independence,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableTestOutcome {
    pub mode: TableTestMode,
    pub test: TestOutcome,
    /// Attached in independence mode.
    pub cramers_v: Option<f64>,
}

/// χ² test of homogeneity or independence on a k×l table, right-sided
/// against χ²((k−1)(l−1)).
pub fn chi2_table_test(table: &ContingencyTable, mode: TableTestMode, alpha: f64) -> Result<TableTestOutcome> {
    if table.rows() < 2 || table.cols() < 2 {
        return Err(insufficient("table test needs at least two rows and two columns"));
    }
    let stat = chi2_descriptive(table)?;
    let mut notes = Vec::new();
    if !table.expected_counts_adequate() {
        notes.push("an expected count is below 5; the chi-square approximation may be poor".to_string());
    }
    let df = ((table.rows() - 1) * (table.cols() - 1)) as f64;
    let name = match mode {
        TableTestMode::Homogeneity => "chi-square test of homogeneity",
        TableTestMode::Independence => "chi-square test of independence",
    };
    let test = TestOutcome::new(name, stat, Distribution::chi_square(df)?, TailKind::RightSided, alpha, notes)?;
    let cramers_v = match mode {
        TableTestMode::Independence => Some(cramers_v(table)?),
        TableTestMode::Homogeneity => None,
    };
    Ok(TableTestOutcome { mode, test, cramers_v })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnovaTable {
    pub bss: f64,
    pub rss: f64,
    pub tss: f64,
    pub df_between: f64,
    pub df_within: f64,
    pub df_total: f64,
    pub ms_between: f64,
    pub ms_within: f64,
    pub f: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnovaOutcome {
    pub table: AnovaTable,
    pub test: TestOutcome,
}

fn anova_named(name: &str, groups: &[Vec<f64>], alpha: f64) -> Result<AnovaOutcome> {
    let k = groups.len();
    if k < 2 {
        return Err(insufficient("analysis of variance needs at least two groups"));
    }
    for (i, g) in groups.iter().enumerate() {
        if g.len() < 2 {
            return Err(insufficient(format!("group {} has fewer than two observations", i + 1)));
        }
    }
    let all: Vec<f64> = groups.iter().flatten().copied().collect();
    let n = all.len() as f64;
    let grand = mean_of(&all);
    let mut bss = 0.0;
    let mut rss = 0.0;
    for g in groups {
        let m = mean_of(g);
        bss += g.len() as f64 * (m - grand).powi(2);
        rss += g.iter().map(|x| (x - m).powi(2)).sum::<f64>();
    }
    let tss: f64 = all.iter().map(|x| (x - grand).powi(2)).sum();
    if !(rss > 0.0) {
        return Err(degenerate("residual sum of squares is zero"));
    }
    if (tss - bss - rss).abs() > 1e-9 * tss {
        return Err(degenerate("sum of squares decomposition lost precision"));
    }
    let (df_b, df_w) = ((k - 1) as f64, n - k as f64);
    let (ms_b, ms_w) = (bss / df_b, rss / df_w);
    let f = ms_b / ms_w;
    let mut notes = Vec::new();
    if k == 2 {
        notes.push("two groups: equivalent to the pooled two-sample t-test (F = t^2)".to_string());
    }
    let test = TestOutcome::new(name, f, Distribution::fisher_f(df_b, df_w)?, TailKind::RightSided, alpha, notes)?;
    Ok(AnovaOutcome {
        table: AnovaTable {
            bss,
            rss,
            tss,
            df_between: df_b,
            df_within: df_w,
            df_total: n - 1.0,
            ms_between: ms_b,
            ms_within: ms_w,
            f,
        },
        test,
    })
}

/// One-way analysis of variance, F = (BSS/(k−1))/(RSS/(n−k)).
pub fn anova_oneway(groups: &[Vec<f64>], alpha: f64) -> Result<AnovaOutcome> {
    anova_named("one-way ANOVA", groups, alpha)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairwiseComparison {
    pub first: usize,
    pub second: usize,
    pub test: TestOutcome,
}

/// All pairwise two-sided pooled t-tests at the Bonferroni level
/// α / C(k, 2).
pub fn anova_posthoc_bonferroni(groups: &[Vec<f64>], alpha: f64) -> Result<Vec<PairwiseComparison>> {
    check_alpha(alpha)?;
    let k = groups.len();
    if k < 2 {
        return Err(insufficient("post-hoc comparisons need at least two groups"));
    }
    let adjusted = alpha / (k * (k - 1) / 2) as f64;
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let test = match t_test_two_independent(&groups[i], &groups[j], true, TailKind::TwoSided, adjusted) {
                Ok(t) => t,
                // identical constant groups carry no evidence of a difference
                Err(StatError::Degenerate(_)) if mean_of(&groups[i]) == mean_of(&groups[j]) => TestOutcome::new(
                    "two-sample t-test",
                    0.0,
                    Distribution::student_t((groups[i].len() + groups[j].len() - 2) as f64)?,
                    TailKind::TwoSided,
                    adjusted,
                    vec!["both groups constant and equal".to_string()],
                )?,
                Err(e) => return Err(e),
            };
            out.push(PairwiseComparison { first: i, second: j, test });
        }
    }
    Ok(out)
}

/// Levene's test: one-way ANOVA on absolute deviations from group means.
pub fn levene_test(groups: &[Vec<f64>], alpha: f64) -> Result<TestOutcome> {
    let dev: Vec<Vec<f64>> = groups
        .iter()
        .map(|g| {
            let m = if g.is_empty() { 0.0 } else { mean_of(g) };
            g.iter().map(|x| (x - m).abs()).collect()
        })
        .collect();
    let mut out = anova_named("Levene test", &dev, alpha)?.test;
    out.notes.clear();
    Ok(out)
}
