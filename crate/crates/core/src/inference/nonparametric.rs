use serde::Serialize;

use super::{check_alpha, NullDistribution, TailKind, TestOutcome};
use crate::bivariate::spearman_rs;
use crate::data::{midranks, RawSample};
use crate::descriptive::{mean_of, variance_of};
use crate::distributions::Distribution;
use crate::error::{degenerate, insufficient, Result, StatError};
use crate::special::std_normal_cdf;

fn tied_share(ranks: &[f64]) -> f64 {
    let mut s = ranks.to_vec();
    s.sort_by(f64::total_cmp);
    let mut tied = 0;
    let mut i = 0;
    while i < s.len() {
        let mut j = i + 1;
        while j < s.len() && s[j] == s[i] {
            j += 1;
        }
        if j - i > 1 {
            tied += j - i;
        }
        i = j;
    }
    tied as f64 / s.len() as f64
}

const HEAVY_TIES: f64 = 0.25;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MannWhitneyOutcome {
    pub u1: f64,
    pub u2: f64,
    pub rank_sum1: f64,
    pub rank_sum2: f64,
    pub test: TestOutcome,
}

/// Mann–Whitney U test with the normal approximation.
///
/// Two-sided tests standardise U = min(U₁, U₂). Directed tests standardise
/// U₂, which grows when group 1 tends to larger values, so that the
/// left-sided alternative (group 1 lower) sits in the lower tail.
pub fn mann_whitney_u(x1: &[f64], x2: &[f64], tail: TailKind, alpha: f64) -> Result<MannWhitneyOutcome> {
    if x1.is_empty() || x2.is_empty() {
        return Err(StatError::EmptyInput);
    }
    let joint: Vec<f64> = x1.iter().chain(x2).copied().collect();
    let ranks = midranks(&joint);
    let (n1, n2) = (x1.len() as f64, x2.len() as f64);
    let r1: f64 = ranks[..x1.len()].iter().sum();
    let r2: f64 = ranks[x1.len()..].iter().sum();
    let u1 = n1 * n2 + n1 * (n1 + 1.0) / 2.0 - r1;
    let u2 = n1 * n2 + n2 * (n2 + 1.0) / 2.0 - r2;
    let mu = n1 * n2 / 2.0;
    let sigma = (n1 * n2 * (n1 + n2 + 1.0) / 12.0).sqrt();
    let u = match tail {
        TailKind::TwoSided => u1.min(u2),
        _ => u2,
    };
    let mut notes = Vec::new();
    if x1.len() < 8 || x2.len() < 8 {
        notes.push("group size below 8; the normal approximation may be poor".to_string());
    }
    if tied_share(&ranks) > HEAVY_TIES {
        notes.push("heavy ties; no tie correction applied to the standard error".to_string());
    }
    let test = TestOutcome::new("Mann-Whitney U test", (u - mu) / sigma, Distribution::standard_normal(), tail, alpha, notes)?;
    Ok(MannWhitneyOutcome {
        u1,
        u2,
        rank_sum1: r1,
        rank_sum2: r2,
        test,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WilcoxonOutcome {
    pub w_plus: f64,
    pub w_minus: f64,
    pub n_reduced: usize,
    pub test: TestOutcome,
}

/// Wilcoxon signed-rank test on D = x_A − x_B. Zero differences are
/// dropped; |D| is ranked with mid-ranks.
pub fn wilcoxon_signed_rank(xa: &[f64], xb: &[f64], tail: TailKind, alpha: f64) -> Result<WilcoxonOutcome> {
    if xa.len() != xb.len() {
        return Err(StatError::LengthMismatch {
            left: xa.len(),
            right: xb.len(),
        });
    }
    let d: Vec<f64> = xa.iter().zip(xb).map(|(a, b)| a - b).filter(|d| *d != 0.0).collect();
    if d.is_empty() {
        return Err(insufficient("no informative pairs: all differences are zero"));
    }
    let abs: Vec<f64> = d.iter().map(|v| v.abs()).collect();
    let ranks = midranks(&abs);
    let w_plus: f64 = d.iter().zip(&ranks).filter(|(v, _)| **v > 0.0).map(|(_, r)| r).sum();
    let w_minus: f64 = d.iter().zip(&ranks).filter(|(v, _)| **v < 0.0).map(|(_, r)| r).sum();
    let n = d.len() as f64;
    let mu = n * (n + 1.0) / 4.0;
    let sigma = (n * (n + 1.0) * (2.0 * n + 1.0) / 24.0).sqrt();
    let mut notes = Vec::new();
    if d.len() <= 20 {
        notes.push("reduced sample size n_red <= 20; the normal approximation may be poor".to_string());
    }
    if tied_share(&ranks) > HEAVY_TIES {
        notes.push("heavy ties; no tie correction applied to the standard error".to_string());
    }
    let test = TestOutcome::new(
        "Wilcoxon signed-rank test",
        (w_plus - mu) / sigma,
        Distribution::standard_normal(),
        tail,
        alpha,
        notes,
    )?;
    Ok(WilcoxonOutcome {
        w_plus,
        w_minus,
        n_reduced: d.len(),
        test,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KruskalWallisOutcome {
    pub rank_sums: Vec<f64>,
    pub test: TestOutcome,
}

/// Kruskal–Wallis H = 12/(n(n+1)) Σ R_i²/n_i − 3(n+1) against χ²(k−1).
pub fn kruskal_wallis(groups: &[Vec<f64>], alpha: f64) -> Result<KruskalWallisOutcome> {
    let k = groups.len();
    if k < 2 {
        return Err(insufficient("Kruskal-Wallis test needs at least two groups"));
    }
    if groups.iter().any(Vec::is_empty) {
        return Err(StatError::EmptyInput);
    }
    let joint: Vec<f64> = groups.iter().flatten().copied().collect();
    let ranks = midranks(&joint);
    let n = joint.len() as f64;
    let mut rank_sums = Vec::with_capacity(k);
    let mut offset = 0;
    let mut sum = 0.0;
    for g in groups {
        let r: f64 = ranks[offset..offset + g.len()].iter().sum();
        sum += r * r / g.len() as f64;
        rank_sums.push(r);
        offset += g.len();
    }
    let h = 12.0 / (n * (n + 1.0)) * sum - 3.0 * (n + 1.0);
    let mut notes = Vec::new();
    if k < 3 {
        notes.push("fewer than three groups; the Mann-Whitney U test is the usual choice".to_string());
    }
    if groups.iter().any(|g| g.len() < 5) {
        notes.push("a group has fewer than 5 observations; the chi-square approximation may be poor".to_string());
    }
    let test = TestOutcome::new(
        "Kruskal-Wallis test",
        h,
        Distribution::chi_square((k - 1) as f64)?,
        TailKind::RightSided,
        alpha,
        notes,
    )?;
    Ok(KruskalWallisOutcome { rank_sums, test })
}

/// Asymptotic Kolmogorov tail probability P(K > λ).
fn kolmogorov_tail(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for j in 1..=100 {
        let j = j as f64;
        let term = (-2.0 * j * j * lambda * lambda).exp();
        sum += if j as u32 % 2 == 1 { term } else { -term };
        if term < 1e-17 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Kolmogorov–Smirnov test of normality with mean and standard deviation
/// estimated from the sample.
pub fn ks_test_normal(values: &[f64], alpha: f64) -> Result<TestOutcome> {
    check_alpha(alpha)?;
    if values.len() < 5 {
        return Err(insufficient("Kolmogorov-Smirnov test requires n >= 5"));
    }
    let s = variance_of(values)?.sqrt();
    if !(s > 0.0) {
        return Err(degenerate("sample standard deviation is zero"));
    }
    let m = mean_of(values);
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let d = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = std_normal_cdf((x - m) / s);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max);
    let lambda = (n.sqrt() + 0.12 + 0.11 / n.sqrt()) * d;
    Ok(TestOutcome::from_parts(
        "Kolmogorov-Smirnov normality test",
        d,
        NullDistribution::Kolmogorov { family: "kolmogorov" },
        Vec::new(),
        TailKind::RightSided,
        kolmogorov_tail(lambda),
        alpha,
        vec!["mean and variance estimated from the sample; the p-value is conservative (Lilliefors)".to_string()],
    ))
}

/// Approximate t(n−2) test of ρ_S = 0 with T = √(n−2) r_S/√(1−r_S²).
pub fn spearman_t_test(xs: &[f64], ys: &[f64], tail: TailKind, alpha: f64) -> Result<TestOutcome> {
    if xs.len() < 3 {
        return Err(insufficient("rank correlation test requires n >= 3"));
    }
    let rs = spearman_rs(&RawSample::ordinal(xs.to_vec())?, &RawSample::ordinal(ys.to_vec())?)?;
    if !(rs.abs() < 1.0 - 1e-12) {
        return Err(degenerate("perfect rank correlation"));
    }
    let n = xs.len() as f64;
    let t = (n - 2.0).sqrt() * rs / (1.0 - rs * rs).sqrt();
    let mut notes = Vec::new();
    if xs.len() < 30 {
        notes.push("n < 30; the t approximation may be poor".to_string());
    }
    TestOutcome::new("Spearman rank correlation test", t, Distribution::student_t(n - 2.0)?, tail, alpha, notes)
}
