//! Parametric distribution laws and the generic random-variable toolkit
//! built on them.

use std::f64::consts::{LN_2, PI};
use std::ops::Bound;

use rand::distributions::{Distribution as _, Open01};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Measure, Result, StatError};
use crate::special::{
    beta_i_unchecked, gamma_p_unchecked, integrate, invert_cdf, ln_beta_unchecked,
    ln_gamma_unchecked, std_normal_cdf, RootBracket,
};

mod rv;

pub use rv::{
    continuous_lorenz, k_sigma_probability, linear_transform_moments, pareto_exceedance_ratio,
    pareto_lorenz, standardize_rv, uniform_one_sigma_prob,
};

/// The parameters of each supported law.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// Equal mass on each listed value.
    DiscreteUniform { values: Vec<f64> },
    Bernoulli { p: f64 },
    Binomial { n: u64, p: f64 },
    /// `n` draws without replacement from `total` units, `successes` of
    /// which carry the property.
    Hypergeometric { n: u64, successes: u64, total: u64 },
    ContinuousUniform { a: f64, b: f64 },
    Normal { mean: f64, variance: f64 },
    ChiSquare { df: f64 },
    StudentT { df: f64 },
    FisherF { df1: f64, df2: f64 },
    Pareto { gamma: f64, x_min: f64 },
    Exponential { lambda: f64 },
    Logistic { mu: f64, s: f64 },
    SpecialHyperbolic,
    /// `location` is the median `b`, `scale` the half-width `a`.
    Cauchy { location: f64, scale: f64 },
}

/// A validated distribution law.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Distribution {
    family: Family,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Moments {
    pub mean: Measure,
    pub variance: Measure,
    pub skewness: Measure,
    pub excess_kurtosis: Measure,
}

impl Moments {
    fn all(mean: f64, variance: f64, skewness: f64, excess_kurtosis: f64) -> Self {
        Self {
            mean: Measure::Value(mean),
            variance: Measure::Value(variance),
            skewness: Measure::Value(skewness),
            excess_kurtosis: Measure::Value(excess_kurtosis),
        }
    }
}

fn guarded(cond: bool, value: impl FnOnce() -> f64, reason: &str) -> Measure {
    if cond {
        Measure::Value(value())
    } else {
        Measure::absent(reason)
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be finite, got {v}")))
    }
}

fn probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(invalid(format!("p must lie in [0, 1], got {p}")))
    }
}

/// C(n, k) as a float by the multiplicative formula.
fn choose_f64(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c
}

fn ln_choose(n: u64, k: u64) -> f64 {
    if n <= 1000 {
        choose_f64(n, k).ln()
    } else {
        ln_gamma_unchecked(n as f64 + 1.0)
            - ln_gamma_unchecked(k as f64 + 1.0)
            - ln_gamma_unchecked((n - k) as f64 + 1.0)
    }
}

/// Mean, variance, skewness and excess kurtosis of a finite mass function by
/// direct summation.
fn finite_moments(points: &[f64], probs: &[f64]) -> (f64, f64, Measure, Measure) {
    let mean: f64 = points.iter().zip(probs).map(|(x, p)| x * p).sum();
    let central = |k: i32| -> f64 { points.iter().zip(probs).map(|(x, p)| (x - mean).powi(k) * p).sum() };
    let var = central(2);
    if var <= 0.0 {
        let why = "zero variance";
        return (mean, 0.0, Measure::absent(why), Measure::absent(why));
    }
    (
        mean,
        var,
        Measure::Value(central(3) / var.powf(1.5)),
        Measure::Value(central(4) / (var * var) - 3.0),
    )
}

/// Starting value for the standard normal quantile, rational approximation
/// with absolute error below 4.5e-4.
fn normal_quantile_seed(alpha: f64) -> f64 {
    let p = alpha.min(1.0 - alpha);
    let t = (-2.0 * p.ln()).sqrt();
    let z = t - (2.515_517 + 0.802_853 * t + 0.010_328 * t * t)
        / (1.0 + 1.432_788 * t + 0.189_269 * t * t + 0.001_308 * t * t * t);
    if alpha < 0.5 {
        -z
    } else {
        z
    }
}

fn std_normal_quantile(alpha: f64) -> Result<f64> {
    if alpha == 0.5 {
        return Ok(0.0);
    }
    if alpha > 0.5 {
        return Ok(-std_normal_quantile(1.0 - alpha)?);
    }
    let z0 = normal_quantile_seed(alpha);
    let bracket = RootBracket::expand(&std_normal_cdf, alpha, z0 - 1e-3, z0 + 1e-3, f64::NEG_INFINITY, f64::INFINITY)?;
    invert_cdf(std_normal_cdf, alpha, bracket)
}

impl Distribution {
    pub fn new(family: Family) -> Result<Self> {
        match &family {
            Family::DiscreteUniform { values } => {
                if values.is_empty() {
                    return Err(StatError::EmptyInput);
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(invalid("values must be finite"));
                }
                let mut sorted = values.clone();
                sorted.sort_by(f64::total_cmp);
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(invalid("values must be distinct"));
                }
                return Ok(Self {
                    family: Family::DiscreteUniform { values: sorted },
                });
            }
            Family::Bernoulli { p } | Family::Binomial { p, .. } => probability(*p)?,
            Family::Hypergeometric { n, successes, total } => {
                if n > total || successes > total {
                    return Err(invalid(format!(
                        "hypergeometric parameters need n <= N and M <= N, got n={n}, M={successes}, N={total}"
                    )));
                }
                if *total == 0 {
                    return Err(invalid("population size must be positive"));
                }
            }
            Family::ContinuousUniform { a, b } => {
                finite("a", *a)?;
                finite("b", *b)?;
                if !(a < b) {
                    return Err(invalid(format!("uniform needs a < b, got a={a}, b={b}")));
                }
            }
            Family::Normal { mean, variance } => {
                finite("mean", *mean)?;
                positive("variance", *variance)?;
            }
            Family::ChiSquare { df } | Family::StudentT { df } => positive("df", *df)?,
            Family::FisherF { df1, df2 } => {
                positive("df1", *df1)?;
                positive("df2", *df2)?;
            }
            Family::Pareto { gamma, x_min } => {
                positive("gamma", *gamma)?;
                positive("x_min", *x_min)?;
            }
            Family::Exponential { lambda } => positive("lambda", *lambda)?,
            Family::Logistic { mu, s } => {
                finite("mu", *mu)?;
                positive("s", *s)?;
            }
            Family::SpecialHyperbolic => {}
            Family::Cauchy { location, scale } => {
                finite("location", *location)?;
                positive("scale", *scale)?;
            }
        }
        Ok(Self { family })
    }

    pub fn discrete_uniform(values: Vec<f64>) -> Result<Self> {
        Self::new(Family::DiscreteUniform { values })
    }
    pub fn bernoulli(p: f64) -> Result<Self> {
        Self::new(Family::Bernoulli { p })
    }
    pub fn binomial(n: u64, p: f64) -> Result<Self> {
        Self::new(Family::Binomial { n, p })
    }
    pub fn hypergeometric(n: u64, successes: u64, total: u64) -> Result<Self> {
        Self::new(Family::Hypergeometric { n, successes, total })
    }
    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        Self::new(Family::ContinuousUniform { a, b })
    }
    pub fn normal(mean: f64, variance: f64) -> Result<Self> {
        Self::new(Family::Normal { mean, variance })
    }
    pub fn standard_normal() -> Self {
        Self {
            family: Family::Normal {
                mean: 0.0,
                variance: 1.0,
            },
        }
    }
    pub fn chi_square(df: f64) -> Result<Self> {
        Self::new(Family::ChiSquare { df })
    }
    pub fn student_t(df: f64) -> Result<Self> {
        Self::new(Family::StudentT { df })
    }
    pub fn fisher_f(df1: f64, df2: f64) -> Result<Self> {
        Self::new(Family::FisherF { df1, df2 })
    }
    pub fn pareto(gamma: f64, x_min: f64) -> Result<Self> {
        Self::new(Family::Pareto { gamma, x_min })
    }
    pub fn exponential(lambda: f64) -> Result<Self> {
        Self::new(Family::Exponential { lambda })
    }
    pub fn logistic(mu: f64, s: f64) -> Result<Self> {
        Self::new(Family::Logistic { mu, s })
    }
    pub fn special_hyperbolic() -> Self {
        Self {
            family: Family::SpecialHyperbolic,
        }
    }
    pub fn cauchy(location: f64, scale: f64) -> Result<Self> {
        Self::new(Family::Cauchy { location, scale })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn is_discrete(&self) -> bool {
        matches!(
            self.family,
            Family::DiscreteUniform { .. }
                | Family::Bernoulli { .. }
                | Family::Binomial { .. }
                | Family::Hypergeometric { .. }
        )
    }

    /// Short conventional label, e.g. `B(10;0.6)` or `N(0;1)`.
    pub fn label(&self) -> String {
        match &self.family {
            Family::DiscreteUniform { values } => format!("L({})", values.len()),
            Family::Bernoulli { p } => format!("B(1;{p})"),
            Family::Binomial { n, p } => format!("B({n};{p})"),
            Family::Hypergeometric { n, successes, total } => format!("H({n};{successes};{total})"),
            Family::ContinuousUniform { a, b } => format!("U({a};{b})"),
            Family::Normal { mean, variance } => format!("N({mean};{variance})"),
            Family::ChiSquare { df } => format!("chi2({df})"),
            Family::StudentT { df } => format!("t({df})"),
            Family::FisherF { df1, df2 } => format!("F({df1};{df2})"),
            Family::Pareto { gamma, x_min } => format!("Par({gamma};{x_min})"),
            Family::Exponential { lambda } => format!("Ex({lambda})"),
            Family::Logistic { mu, s } => format!("Lo({mu};{s})"),
            Family::SpecialHyperbolic => "sHyp".to_string(),
            Family::Cauchy { location, scale } => format!("Ca({location};{scale})"),
        }
    }

    /// Support points of a discrete law in increasing order.
    pub fn support_points(&self) -> Option<Vec<f64>> {
        match &self.family {
            Family::DiscreteUniform { values } => Some(values.clone()),
            Family::Bernoulli { .. } => Some(vec![0.0, 1.0]),
            Family::Binomial { n, .. } => Some((0..=*n).map(|k| k as f64).collect()),
            Family::Hypergeometric { n, successes, total } => {
                let lo = n.saturating_sub(total - successes);
                let hi = (*n).min(*successes);
                Some((lo..=hi).map(|k| k as f64).collect())
            }
            _ => None,
        }
    }

    /// Closed range containing all probability mass.
    pub fn support(&self) -> (f64, f64) {
        match &self.family {
            Family::ContinuousUniform { a, b } => (*a, *b),
            Family::ChiSquare { .. } | Family::FisherF { .. } | Family::Exponential { .. } => (0.0, f64::INFINITY),
            Family::Pareto { x_min, .. } => (*x_min, f64::INFINITY),
            Family::SpecialHyperbolic => (0.0, 1.0),
            Family::Normal { .. } | Family::StudentT { .. } | Family::Logistic { .. } | Family::Cauchy { .. } => {
                (f64::NEG_INFINITY, f64::INFINITY)
            }
            _ => {
                let pts = self.support_points().expect("discrete law");
                (pts[0], pts[pts.len() - 1])
            }
        }
    }

    /// Probability function for discrete laws, density for continuous ones.
    /// Zero outside the support.
    pub fn density(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        match &self.family {
            Family::DiscreteUniform { values } => {
                if values.contains(&x) {
                    1.0 / values.len() as f64
                } else {
                    0.0
                }
            }
            Family::Bernoulli { p } => {
                if x == 0.0 {
                    1.0 - p
                } else if x == 1.0 {
                    *p
                } else {
                    0.0
                }
            }
            Family::Binomial { n, p } => match integer_in(x, 0, *n) {
                Some(k) => binomial_pmf(*n, *p, k),
                None => 0.0,
            },
            Family::Hypergeometric { n, successes, total } => {
                let lo = n.saturating_sub(total - successes);
                let hi = (*n).min(*successes);
                match integer_in(x, lo, hi) {
                    Some(k) => (ln_choose(*successes, k) + ln_choose(total - successes, n - k)
                        - ln_choose(*total, *n))
                    .exp(),
                    None => 0.0,
                }
            }
            Family::ContinuousUniform { a, b } => {
                if x >= *a && x <= *b {
                    1.0 / (b - a)
                } else {
                    0.0
                }
            }
            Family::Normal { mean, variance } => {
                let z2 = (x - mean) * (x - mean) / variance;
                (-0.5 * z2).exp() / (2.0 * PI * variance).sqrt()
            }
            Family::ChiSquare { df } => {
                if x < 0.0 {
                    0.0
                } else if x == 0.0 {
                    density_at_zero(*df, 0.5)
                } else {
                    let h = 0.5 * df;
                    ((h - 1.0) * x.ln() - 0.5 * x - h * LN_2 - ln_gamma_unchecked(h)).exp()
                }
            }
            Family::StudentT { df } => {
                let ln = ln_gamma_unchecked(0.5 * (df + 1.0))
                    - ln_gamma_unchecked(0.5 * df)
                    - 0.5 * (df * PI).ln()
                    - 0.5 * (df + 1.0) * (x * x / df).ln_1p();
                ln.exp()
            }
            Family::FisherF { df1, df2 } => {
                if x < 0.0 {
                    0.0
                } else if x == 0.0 {
                    density_at_zero(*df1, 1.0)
                } else {
                    let ln = 0.5 * (df1 * df1.ln() + df2 * df2.ln()) + (0.5 * df1 - 1.0) * x.ln()
                        - 0.5 * (df1 + df2) * (df1 * x + df2).ln()
                        - ln_beta_unchecked(0.5 * df1, 0.5 * df2);
                    ln.exp()
                }
            }
            Family::Pareto { gamma, x_min } => {
                if x < *x_min {
                    0.0
                } else {
                    gamma / x_min * (x_min / x).powf(gamma + 1.0)
                }
            }
            Family::Exponential { lambda } => {
                if x < 0.0 {
                    0.0
                } else {
                    lambda * (-lambda * x).exp()
                }
            }
            Family::Logistic { mu, s } => {
                let e = (-((x - mu) / s).abs()).exp();
                e / (s * (1.0 + e) * (1.0 + e))
            }
            Family::SpecialHyperbolic => {
                if (0.0..=1.0).contains(&x) {
                    1.0 / (LN_2 * (1.0 + x))
                } else {
                    0.0
                }
            }
            Family::Cauchy { location, scale } => scale / (PI * (scale * scale + (x - location).powi(2))),
        }
    }

    /// Distribution function F(x) = P(X ≤ x).
    pub fn cdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        if let Some(points) = self.support_points() {
            let total: f64 = points
                .iter()
                .take_while(|&&v| v <= x)
                .map(|&v| self.density(v))
                .sum();
            return total.min(1.0);
        }
        let f = match &self.family {
            Family::ContinuousUniform { a, b } => (x - a) / (b - a),
            Family::Normal { mean, variance } => std_normal_cdf((x - mean) / variance.sqrt()),
            Family::ChiSquare { df } => {
                if x <= 0.0 {
                    0.0
                } else {
                    gamma_p_unchecked(0.5 * df, 0.5 * x)
                }
            }
            Family::StudentT { df } => {
                if x.is_infinite() {
                    return if x > 0.0 { 1.0 } else { 0.0 };
                }
                let tail = 0.5 * beta_i_unchecked(df / (df + x * x), 0.5 * df, 0.5);
                if x < 0.0 {
                    tail
                } else {
                    1.0 - tail
                }
            }
            Family::FisherF { df1, df2 } => {
                if x <= 0.0 {
                    0.0
                } else if x.is_infinite() {
                    1.0
                } else {
                    beta_i_unchecked(df1 * x / (df1 * x + df2), 0.5 * df1, 0.5 * df2)
                }
            }
            Family::Pareto { gamma, x_min } => {
                if x < *x_min {
                    0.0
                } else {
                    1.0 - (x_min / x).powf(*gamma)
                }
            }
            Family::Exponential { lambda } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-lambda * x).exp_m1()
                }
            }
            Family::Logistic { mu, s } => 1.0 / (1.0 + (-(x - mu) / s).exp()),
            Family::SpecialHyperbolic => x.clamp(0.0, 1.0).ln_1p() / LN_2,
            Family::Cauchy { location, scale } => 0.5 + ((x - location) / scale).atan() / PI,
            _ => unreachable!("discrete laws handled above"),
        };
        f.clamp(0.0, 1.0)
    }

    /// α-quantile. Continuous laws solve F(x) = α; discrete laws return the
    /// smallest support point with F(x) ≥ α.
    pub fn quantile(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(invalid(format!("quantile level must lie in (0, 1), got {alpha}")));
        }
        if let Some(points) = self.support_points() {
            let mut cum = 0.0;
            for &v in &points {
                cum += self.density(v);
                if cum >= alpha {
                    return Ok(v);
                }
            }
            return Ok(points[points.len() - 1]);
        }
        let cdf = |x: f64| self.cdf(x);
        match &self.family {
            Family::ContinuousUniform { a, b } => Ok(a + alpha * (b - a)),
            Family::Normal { mean, variance } => Ok(mean + variance.sqrt() * std_normal_quantile(alpha)?),
            Family::ChiSquare { df } => {
                let bracket = RootBracket::expand(&cdf, alpha, 0.0, 2.0 * df.max(1.0), 0.0, f64::INFINITY)?;
                invert_cdf(cdf, alpha, bracket)
            }
            Family::StudentT { .. } => {
                if alpha == 0.5 {
                    return Ok(0.0);
                }
                if alpha > 0.5 {
                    return Ok(-self.quantile(1.0 - alpha)?);
                }
                let bracket = RootBracket::expand(&cdf, alpha, -2.0, 0.0, f64::NEG_INFINITY, 0.0)?;
                invert_cdf(cdf, alpha, bracket)
            }
            Family::FisherF { .. } => {
                let bracket = RootBracket::expand(&cdf, alpha, 0.0, 4.0, 0.0, f64::INFINITY)?;
                invert_cdf(cdf, alpha, bracket)
            }
            Family::Pareto { gamma, x_min } => Ok(x_min * (1.0 - alpha).powf(-1.0 / gamma)),
            Family::Exponential { lambda } => Ok(-(-alpha).ln_1p() / lambda),
            Family::Logistic { mu, s } => Ok(mu + s * (alpha / (1.0 - alpha)).ln()),
            Family::SpecialHyperbolic => Ok((alpha * LN_2).exp_m1()),
            Family::Cauchy { location, scale } => Ok(location + scale * (PI * (alpha - 0.5)).tan()),
            _ => unreachable!("discrete laws handled above"),
        }
    }

    /// Expectation, variance, skewness and excess kurtosis, each absent
    /// where the defining integral or sum diverges.
    pub fn moments(&self) -> Moments {
        match &self.family {
            Family::DiscreteUniform { .. } | Family::Hypergeometric { .. } => {
                let points = self.support_points().expect("discrete law");
                let probs: Vec<f64> = points.iter().map(|&x| self.density(x)).collect();
                let (mean, var, skewness, excess_kurtosis) = finite_moments(&points, &probs);
                let (mean, variance) = match &self.family {
                    Family::Hypergeometric { n, successes, total } => {
                        let (n, m, big) = (*n as f64, *successes as f64, *total as f64);
                        let frac = m / big;
                        let fpc = if big > 1.0 { (big - n) / (big - 1.0) } else { 0.0 };
                        (n * frac, n * frac * (1.0 - frac) * fpc)
                    }
                    _ => (mean, var),
                };
                Moments {
                    mean: Measure::Value(mean),
                    variance: Measure::Value(variance),
                    skewness,
                    excess_kurtosis,
                }
            }
            Family::Bernoulli { p } => binomial_moments(1.0, *p),
            Family::Binomial { n, p } => binomial_moments(*n as f64, *p),
            Family::ContinuousUniform { a, b } => Moments::all(0.5 * (a + b), (b - a).powi(2) / 12.0, 0.0, -1.2),
            Family::Normal { mean, variance } => Moments::all(*mean, *variance, 0.0, 0.0),
            Family::ChiSquare { df } => Moments::all(*df, 2.0 * df, (8.0 / df).sqrt(), 12.0 / df),
            Family::StudentT { df } => {
                let n = *df;
                Moments {
                    mean: guarded(n > 1.0, || 0.0, "mean requires n > 1"),
                    variance: guarded(n > 2.0, || n / (n - 2.0), "variance requires n > 2"),
                    skewness: guarded(n > 3.0, || 0.0, "skewness requires n > 3"),
                    excess_kurtosis: guarded(n > 4.0, || 6.0 / (n - 4.0), "excess kurtosis requires n > 4"),
                }
            }
            Family::FisherF { df1, df2 } => {
                let (n1, n2) = (*df1, *df2);
                Moments {
                    mean: guarded(n2 > 2.0, || n2 / (n2 - 2.0), "mean requires n2 > 2"),
                    variance: guarded(
                        n2 > 4.0,
                        || 2.0 * n2 * n2 * (n1 + n2 - 2.0) / (n1 * (n2 - 2.0).powi(2) * (n2 - 4.0)),
                        "variance requires n2 > 4",
                    ),
                    skewness: guarded(
                        n2 > 6.0,
                        || {
                            (2.0 * n1 + n2 - 2.0) * (8.0 * (n2 - 4.0)).sqrt()
                                / ((n2 - 6.0) * (n1 * (n1 + n2 - 2.0)).sqrt())
                        },
                        "skewness requires n2 > 6",
                    ),
                    excess_kurtosis: guarded(
                        n2 > 8.0,
                        || {
                            12.0 * (n1 * (5.0 * n2 - 22.0) * (n1 + n2 - 2.0) + (n2 - 2.0).powi(2) * (n2 - 4.0))
                                / (n1 * (n2 - 6.0) * (n2 - 8.0) * (n1 + n2 - 2.0))
                        },
                        "excess kurtosis requires n2 > 8",
                    ),
                }
            }
            Family::Pareto { gamma, x_min } => {
                let g = *gamma;
                Moments {
                    mean: guarded(g > 1.0, || g / (g - 1.0) * x_min, "mean requires gamma > 1"),
                    variance: guarded(
                        g > 2.0,
                        || g / ((g - 1.0).powi(2) * (g - 2.0)) * x_min * x_min,
                        "variance requires gamma > 2",
                    ),
                    skewness: guarded(
                        g > 3.0,
                        || 2.0 * (1.0 + g) / (g - 3.0) * ((g - 2.0) / g).sqrt(),
                        "skewness requires gamma > 3",
                    ),
                    excess_kurtosis: guarded(
                        g > 4.0,
                        || 6.0 * (g.powi(3) + g * g - 6.0 * g - 2.0) / (g * (g - 3.0) * (g - 4.0)),
                        "excess kurtosis requires gamma > 4",
                    ),
                }
            }
            Family::Exponential { lambda } => Moments::all(1.0 / lambda, 1.0 / (lambda * lambda), 2.0, 6.0),
            Family::Logistic { mu, s } => Moments::all(*mu, s * s * PI * PI / 3.0, 0.0, 1.2),
            Family::SpecialHyperbolic => {
                let l = LN_2;
                let d = 3.0 * l - 2.0;
                Moments::all(
                    (1.0 - l) / l,
                    d / (2.0 * l * l),
                    (7.0 * l * l - 13.5 * l + 6.0) / (3.0 * 0.5f64.powf(1.5) * d.powf(1.5)),
                    (15.0 * l.powi(3) - 193.0 / 3.0 * l * l + 72.0 * l - 24.0) / (d * d),
                )
            }
            Family::Cauchy { .. } => {
                let why = "does not exist: diverging integral";
                Moments {
                    mean: Measure::absent(why),
                    variance: Measure::absent(why),
                    skewness: Measure::absent(why),
                    excess_kurtosis: Measure::absent(why),
                }
            }
        }
    }

    /// P(X ∈ interval). For continuous laws single points carry no mass, so
    /// open and closed bounds agree.
    pub fn interval_prob(&self, lower: Bound<f64>, upper: Bound<f64>) -> f64 {
        let above = |x: f64| match lower {
            Bound::Included(c) => x >= c,
            Bound::Excluded(c) => x > c,
            Bound::Unbounded => true,
        };
        let below = |x: f64| match upper {
            Bound::Included(d) => x <= d,
            Bound::Excluded(d) => x < d,
            Bound::Unbounded => true,
        };
        if let Some(points) = self.support_points() {
            return points
                .iter()
                .filter(|&&x| above(x) && below(x))
                .map(|&x| self.density(x))
                .sum::<f64>()
                .min(1.0);
        }
        let lo = match lower {
            Bound::Included(c) | Bound::Excluded(c) => self.cdf(c),
            Bound::Unbounded => 0.0,
        };
        let hi = match upper {
            Bound::Included(d) | Bound::Excluded(d) => self.cdf(d),
            Bound::Unbounded => 1.0,
        };
        (hi - lo).max(0.0)
    }

    /// Draws `n` variates by inverse transform from the caller's generator.
    pub fn sample_with<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Vec<f64>> {
        if let Some(points) = self.support_points() {
            let mut cum = Vec::with_capacity(points.len());
            let mut acc = 0.0;
            for &x in &points {
                acc += self.density(x);
                cum.push(acc);
            }
            return Ok((0..n)
                .map(|_| {
                    let u: f64 = Open01.sample(rng);
                    let i = cum.partition_point(|&c| c < u).min(points.len() - 1);
                    points[i]
                })
                .collect());
        }
        (0..n).map(|_| self.quantile(Open01.sample(rng))).collect()
    }

    /// Draws `n` variates from a generator seeded with `seed`.
    pub fn random_sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(invalid("sample size must be at least 1"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(n, &mut rng)
    }

    /// Numeric ∫ g(x) f(x) dx over the support (a sum for discrete laws).
    pub fn expect<G: Fn(f64) -> f64>(&self, g: G) -> Result<f64> {
        if let Some(points) = self.support_points() {
            return Ok(points.iter().map(|&x| g(x) * self.density(x)).sum());
        }
        let (lo, hi) = self.support();
        integrate(|x| g(x) * self.density(x), lo, hi, 1e-12)
    }
}

/// Density at the origin for χ² and F, whose behaviour there depends only
/// on the (numerator) degrees of freedom.
fn density_at_zero(df: f64, at_two: f64) -> f64 {
    if df < 2.0 {
        f64::INFINITY
    } else if df == 2.0 {
        at_two
    } else {
        0.0
    }
}

fn integer_in(x: f64, lo: u64, hi: u64) -> Option<u64> {
    if x.fract() != 0.0 || x < lo as f64 || x > hi as f64 {
        None
    } else {
        Some(x as u64)
    }
}

fn binomial_pmf(n: u64, p: f64, k: u64) -> f64 {
    if p == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if p == 1.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    if n <= 1000 {
        choose_f64(n, k) * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32)
    } else {
        (ln_choose(n, k) + k as f64 * p.ln() + (n - k) as f64 * (-p).ln_1p()).exp()
    }
}

fn binomial_moments(n: f64, p: f64) -> Moments {
    let q = 1.0 - p;
    let var = n * p * q;
    let why = "zero variance";
    Moments {
        mean: Measure::Value(n * p),
        variance: Measure::Value(var),
        skewness: guarded(var > 0.0, || (q - p) / var.sqrt(), why),
        excess_kurtosis: guarded(var > 0.0, || (1.0 - 6.0 * p * q) / var, why),
    }
}
