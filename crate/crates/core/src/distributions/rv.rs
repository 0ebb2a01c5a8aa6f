use std::f64::consts::SQRT_2;

use super::{Distribution, Family};
use crate::error::{degenerate, invalid, Result};
use crate::special::{erf, integrate};

/// P(μ − kσ ≤ X ≤ μ + kσ) = 2Φ(k) − 1 for any normal law.
pub fn k_sigma_probability(k: f64) -> Result<f64> {
    if !(k > 0.0) {
        return Err(invalid(format!("k must be positive, got {k}")));
    }
    Ok(erf(k / SQRT_2))
}

/// P(|X − E(X)| ≤ √Var(X)) for any continuous uniform law: 1/√3.
pub fn uniform_one_sigma_prob() -> f64 {
    1.0 / 3f64.sqrt()
}

/// Lorenz curve of a Pareto law, L(α) = 1 − (1 − α)^(1 − 1/γ).
pub fn pareto_lorenz(gamma: f64, alpha: f64) -> Result<f64> {
    if !(gamma > 1.0) {
        return Err(invalid(format!("mean does not exist for gamma = {gamma} <= 1")));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(invalid(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    Ok(1.0 - (1.0 - alpha).powf(1.0 - 1.0 / gamma))
}

/// P(X > a·x)/P(X > x) for a Pareto law, which is (1/a)^γ whatever x.
pub fn pareto_exceedance_ratio(gamma: f64, a: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(invalid(format!("gamma must be positive, got {gamma}")));
    }
    if !(a > 0.0) {
        return Err(invalid(format!("a must be positive, got {a}")));
    }
    Ok(a.powf(-gamma))
}

/// Share of the total held by the lowest fraction α of a non-negative
/// continuous law, ∫ t f(t) dt up to x_α divided by E(X).
pub fn continuous_lorenz(dist: &Distribution, alpha: f64) -> Result<f64> {
    if dist.is_discrete() {
        return Err(invalid("continuous Lorenz curve needs a continuous law"));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(invalid(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    let (lo, hi) = dist.support();
    if lo < 0.0 {
        return Err(invalid("continuous Lorenz curve needs support within [0, inf)"));
    }
    let mean = match dist.moments().mean.value() {
        Some(m) => m,
        None => return Err(invalid("mean does not exist")),
    };
    if !(mean > 0.0) {
        return Err(degenerate("mean is zero"));
    }
    if alpha == 0.0 {
        return Ok(0.0);
    }
    let upper = if alpha == 1.0 { hi } else { dist.quantile(alpha)? };
    let partial = match dist.family() {
        // closed form keeps the heavy tail out of the quadrature
        Family::Pareto { .. } if upper.is_infinite() => mean,
        _ => integrate(|t| t * dist.density(t), lo, upper, 1e-13)?,
    };
    Ok((partial / mean).clamp(0.0, 1.0))
}

/// Mean and variance of a + bX.
pub fn linear_transform_moments(mean: f64, var: f64, a: f64, b: f64) -> Result<(f64, f64)> {
    if !(var >= 0.0) {
        return Err(invalid(format!("variance must be non-negative, got {var}")));
    }
    Ok((a + b * mean, b * b * var))
}

/// Coefficients (a, b) of the standardising map Z = a + bX.
pub fn standardize_rv(mean: f64, var: f64) -> Result<(f64, f64)> {
    if !(var > 0.0) {
        return Err(degenerate("standardisation requires positive variance"));
    }
    let sigma = var.sqrt();
    Ok((-mean / sigma, 1.0 / sigma))
}
