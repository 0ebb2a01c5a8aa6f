use serde::Serialize;

use super::{check_alpha, nonparametric::ks_test_normal, TailKind, TestOutcome};
use crate::bivariate::{ols_fit, pearson_r, RegressionFit};
use crate::distributions::Distribution;
use crate::error::{degenerate, insufficient, invalid, Result, StatError};

/// t(n−2) test of ρ = 0 with T = √(n−2) r/√(1−r²).
pub fn correlation_t_test(xs: &[f64], ys: &[f64], tail: TailKind, alpha: f64) -> Result<TestOutcome> {
    if xs.len() < 3 {
        return Err(insufficient("correlation test requires n >= 3"));
    }
    let r = pearson_r(xs, ys)?;
    if !(r.abs() < 1.0 - 1e-12) {
        return Err(degenerate("perfect correlation"));
    }
    let n = xs.len() as f64;
    let t = (n - 2.0).sqrt() * r / (1.0 - r * r).sqrt();
    TestOutcome::new("correlation t-test", t, Distribution::student_t(n - 2.0)?, tail, alpha, Vec::new())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionInference {
    pub fit: RegressionFit,
    /// Standard error of the residuals, √(Σe²/(n−2)).
    pub se_e: f64,
    pub se_a: f64,
    pub se_b: f64,
    /// F = (n−2)B/(1−B), absent for a perfect fit.
    pub f_test: Option<TestOutcome>,
    pub t_test_b: Option<TestOutcome>,
    pub t_test_a: Option<TestOutcome>,
    pub notes: Vec<String>,
}

/// Inference for the simple linear regression model: the overall F-test
/// and two-sided t-tests of slope and intercept, all with n − 2 residual df.
pub fn regression_inference(xs: &[f64], ys: &[f64], alpha: f64) -> Result<RegressionInference> {
    check_alpha(alpha)?;
    if xs.len() < 4 {
        return Err(insufficient("regression inference requires n >= 4"));
    }
    let fit = ols_fit(xs, ys)?;
    let n = fit.n as f64;
    let se_e = (fit.residual_ss() / (n - 2.0)).sqrt();
    let se_b = se_e / ((n - 1.0).sqrt() * fit.s_x);
    let se_a = se_e * (1.0 / n + fit.x_mean * fit.x_mean / ((n - 1.0) * fit.s_x * fit.s_x)).sqrt();
    let mut notes = Vec::new();
    let (f_test, t_test_b, t_test_a) = if se_e > 0.0 && fit.r_squared < 1.0 {
        let b = fit.r_squared;
        let f = TestOutcome::new(
            "regression F-test",
            (n - 2.0) * b / (1.0 - b),
            Distribution::fisher_f(1.0, n - 2.0)?,
            TailKind::RightSided,
            alpha,
            Vec::new(),
        )?;
        let t = Distribution::student_t(n - 2.0)?;
        let tb = TestOutcome::new("slope t-test", fit.b / se_b, t.clone(), TailKind::TwoSided, alpha, Vec::new())?;
        let ta = TestOutcome::new("intercept t-test", fit.a / se_a, t, TailKind::TwoSided, alpha, Vec::new())?;
        (Some(f), Some(tb), Some(ta))
    } else {
        notes.push("perfect fit: residuals vanish, tests are undefined".to_string());
        (None, None, None)
    };
    Ok(RegressionInference {
        fit,
        se_e,
        se_a,
        se_b,
        f_test,
        t_test_b,
        t_test_a,
        notes,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualDiagnostics {
    pub normality: Option<TestOutcome>,
    /// Pairs (ŷ_i, e_i / SE_e) for a residual plot.
    pub scatter: Vec<(f64, f64)>,
    pub notes: Vec<String>,
}

/// KS normality check of the residuals plus standardised residual scatter.
pub fn residual_diagnostics(fit: &RegressionFit, alpha: f64) -> Result<ResidualDiagnostics> {
    if fit.n < 5 {
        return Err(insufficient("residual diagnostics require n >= 5"));
    }
    let sse: f64 = fit.residual_ss();
    let se_e = (sse / (fit.n as f64 - 2.0)).sqrt();
    let scale = if se_e > 0.0 { se_e } else { 1.0 };
    let scatter = fit
        .predicted
        .iter()
        .zip(&fit.residuals)
        .map(|(p, e)| (*p, e / scale))
        .collect();
    let mut notes = Vec::new();
    let normality = match ks_test_normal(&fit.residuals, alpha) {
        Ok(t) => Some(t),
        Err(e) => {
            notes.push(format!("normality test unavailable: {e}"));
            None
        }
    };
    Ok(ResidualDiagnostics {
        normality,
        scatter,
        notes,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogLogFit {
    pub gamma_hat: f64,
    pub k_hat: f64,
    pub slope: f64,
    /// Correlation of ln x and ln y, absent for constant y.
    pub r_loglog: Option<f64>,
    pub notes: Vec<String>,
}

/// Fits ln y = ln K − (γ+1) ln x by least squares.
pub fn pareto_loglog_fit(xs: &[f64], ys: &[f64]) -> Result<LogLogFit> {
    if xs.len() != ys.len() {
        return Err(StatError::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if let Some(v) = xs.iter().chain(ys).find(|v| !(**v > 0.0)) {
        return Err(invalid(format!("log-log fit needs positive values, found {v}")));
    }
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let fit = ols_fit(&lx, &ly)?;
    let gamma_hat = -fit.b - 1.0;
    let mut notes = Vec::new();
    if !(gamma_hat > 0.0) {
        notes.push(format!("estimated exponent {gamma_hat} is not a valid Pareto exponent"));
    }
    Ok(LogLogFit {
        gamma_hat,
        k_hat: fit.a.exp(),
        slope: fit.b,
        r_loglog: pearson_r(&lx, &ly).ok(),
        notes,
    })
}
