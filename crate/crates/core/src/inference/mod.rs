//! Confidence intervals and hypothesis tests.
//!
//! Every test returns a [`TestOutcome`] whose decision follows the p-value
//! rule: H₀ is rejected exactly when `p < α`. Warnings about violated
//! prerequisites travel in `notes` rather than as errors.

use serde::Serialize;

use crate::distributions::{Distribution, Family};
use crate::error::{invalid, Result};

mod nonparametric;
mod parametric;
mod regression;

pub use nonparametric::{
    kruskal_wallis, ks_test_normal, mann_whitney_u, spearman_t_test, wilcoxon_signed_rank, KruskalWallisOutcome,
    MannWhitneyOutcome, WilcoxonOutcome,
};
pub use parametric::{
    anova_oneway, anova_posthoc_bonferroni, chi2_gof, chi2_table_test, chi2_variance_test, ci_mean, ci_variance,
    f_test_two_variances, levene_test, min_sample_size, t_test_one_sample, t_test_paired, t_test_two_independent,
    AnovaOutcome, AnovaTable, PairwiseComparison, TableTestMode, TableTestOutcome,
};
pub use regression::{
    correlation_t_test, pareto_loglog_fit, regression_inference, residual_diagnostics, LogLogFit,
    RegressionInference, ResidualDiagnostics,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailKind {
    TwoSided,
    LeftSided,
    RightSided,
}

impl std::str::FromStr for TailKind {
    type Err = crate::StatError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two-sided" | "two_sided" | "two" => Ok(TailKind::TwoSided),
            "left-sided" | "left_sided" | "left" | "less" => Ok(TailKind::LeftSided),
            "right-sided" | "right_sided" | "right" | "greater" => Ok(TailKind::RightSided),
            _ => Err(invalid(format!("unknown tail kind '{s}'"))),
        }
    }
}

/// Law of the test statistic under H₀.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum NullDistribution {
    Law(Distribution),
    /// Limiting law of √n·Dₙ, used by the Kolmogorov–Smirnov test.
    Kolmogorov { family: &'static str },
}

impl NullDistribution {
    pub fn law(&self) -> Option<&Distribution> {
        match self {
            NullDistribution::Law(d) => Some(d),
            NullDistribution::Kolmogorov { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestOutcome {
    pub name: String,
    pub statistic: f64,
    pub null_dist: NullDistribution,
    pub df: Vec<f64>,
    pub tail: TailKind,
    pub p_value: f64,
    pub alpha: f64,
    pub reject: bool,
    pub notes: Vec<String>,
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("significance level must lie in (0, 1), got {alpha}")))
    }
}

impl TestOutcome {
    /// Assembles an outcome against a parametric null law.
    pub(crate) fn new(
        name: &str,
        statistic: f64,
        null: Distribution,
        tail: TailKind,
        alpha: f64,
        notes: Vec<String>,
    ) -> Result<Self> {
        check_alpha(alpha)?;
        let p = p_value(tail, &null, statistic);
        let df = match null.family() {
            Family::ChiSquare { df } | Family::StudentT { df } => vec![*df],
            Family::FisherF { df1, df2 } => vec![*df1, *df2],
            _ => Vec::new(),
        };
        Ok(Self::from_parts(name, statistic, NullDistribution::Law(null), df, tail, p, alpha, notes))
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        name: &str,
        statistic: f64,
        null_dist: NullDistribution,
        df: Vec<f64>,
        tail: TailKind,
        p_value: f64,
        alpha: f64,
        notes: Vec<String>,
    ) -> Self {
        let p_value = p_value.clamp(0.0, 1.0);
        Self {
            name: name.to_string(),
            statistic,
            null_dist,
            df,
            tail,
            p_value,
            alpha,
            reject: p_value < alpha,
            notes,
        }
    }
}

/// Whether the law is reflection symmetric about zero.
fn symmetric_about_zero(d: &Distribution) -> bool {
    match d.family() {
        Family::Normal { mean, .. } => *mean == 0.0,
        Family::StudentT { .. } => true,
        Family::Logistic { mu, .. } => *mu == 0.0,
        Family::Cauchy { location, .. } => *location == 0.0,
        Family::ContinuousUniform { a, b } => *a == -*b,
        _ => false,
    }
}

/// p-value of an observed statistic `t` under `null`.
///
/// Two-sided values use F(−|t|) + 1 − F(|t|) for nulls symmetric about
/// zero, and min(1, 2·min(F(t), 1 − F(t))) otherwise.
pub fn p_value(tail: TailKind, null: &Distribution, t: f64) -> f64 {
    let p = match tail {
        TailKind::LeftSided => null.cdf(t),
        TailKind::RightSided => 1.0 - null.cdf(t),
        TailKind::TwoSided => {
            if symmetric_about_zero(null) {
                null.cdf(-t.abs()) + 1.0 - null.cdf(t.abs())
            } else {
                let f = null.cdf(t);
                (2.0 * f.min(1.0 - f)).min(1.0)
            }
        }
    };
    p.clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameter {
    Mean,
    Variance,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfidenceInterval {
    pub parameter: Parameter,
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
}
