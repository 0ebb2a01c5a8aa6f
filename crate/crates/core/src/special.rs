//! Numerical kernels behind the non-elementary distribution functions.
//!
//! Log-gamma (Lanczos), the regularised incomplete gamma and beta
//! functions, the error function, adaptive Gauss–Kronrod quadrature and a
//! bracketed root finder used for quantile inversion.
//!
//! The `Result`-returning functions validate their domain. The
//! `*_unchecked` variants return `NaN` outside the domain and are what the
//! distribution layer calls after parameter validation.

use crate::error::{invalid, Result, StatError};

const MAX_ITER: usize = 100_000;
const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural logarithm of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(invalid(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(ln_gamma_unchecked(x))
}

pub(crate) fn ln_gamma_unchecked(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x < 0.5 {
        // reflection: Γ(x)Γ(1−x) = π / sin(πx)
        let s = (std::f64::consts::PI * x).sin();
        return std::f64::consts::PI.ln() - s.ln() - ln_gamma_unchecked(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// ln B(a, b) = ln Γ(a) + ln Γ(b) − ln Γ(a + b).
pub(crate) fn ln_beta_unchecked(a: f64, b: f64) -> f64 {
    ln_gamma_unchecked(a) + ln_gamma_unchecked(b) - ln_gamma_unchecked(a + b)
}

/// Regularised lower incomplete gamma function P(a, x).
pub fn reg_inc_gamma_p(a: f64, x: f64) -> Result<f64> {
    check_gamma_domain(a, x)?;
    Ok(gamma_pq(a, x).0)
}

/// Regularised upper incomplete gamma function Q(a, x) = 1 − P(a, x).
pub fn reg_inc_gamma_q(a: f64, x: f64) -> Result<f64> {
    check_gamma_domain(a, x)?;
    Ok(gamma_pq(a, x).1)
}

fn check_gamma_domain(a: f64, x: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(invalid(format!("incomplete gamma requires a > 0, got {a}")));
    }
    if !(x >= 0.0) {
        return Err(invalid(format!("incomplete gamma requires x >= 0, got {x}")));
    }
    Ok(())
}

pub(crate) fn gamma_p_unchecked(a: f64, x: f64) -> f64 {
    if !(a > 0.0) || !(x >= 0.0) {
        return f64::NAN;
    }
    gamma_pq(a, x).0
}

/// Returns (P, Q). Series below a + 1, Lentz continued fraction above.
fn gamma_pq(a: f64, x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (0.0, 1.0);
    }
    if x.is_infinite() {
        return (1.0, 0.0);
    }
    let ln_prefactor = -x + a * x.ln() - ln_gamma_unchecked(a);
    if x < a + 1.0 {
        let mut ap = a;
        let mut term = 1.0 / a;
        let mut sum = term;
        for _ in 0..MAX_ITER {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < sum.abs() * EPS {
                break;
            }
        }
        let p = (sum.ln() + ln_prefactor).exp().min(1.0);
        (p, 1.0 - p)
    } else {
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..MAX_ITER {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < TINY {
                d = TINY;
            }
            c = b + an / c;
            if c.abs() < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < EPS {
                break;
            }
        }
        let q = (h.ln() + ln_prefactor).exp().min(1.0);
        (1.0 - q, q)
    }
}

/// Regularised incomplete beta function I_x(a, b).
pub fn reg_inc_beta_i(x: f64, a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(invalid(format!(
            "incomplete beta requires a, b > 0, got a={a}, b={b}"
        )));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(invalid(format!("incomplete beta requires x in [0,1], got {x}")));
    }
    Ok(beta_i_unchecked(x, a, b))
}

pub(crate) fn beta_i_unchecked(x: f64, a: f64, b: f64) -> f64 {
    if !(a > 0.0) || !(b > 0.0) || !(0.0..=1.0).contains(&x) {
        return f64::NAN;
    }
    if x == 0.0 {
        return 0.0;
    }
    if x == 1.0 {
        return 1.0;
    }
    let ln_front = a * x.ln() + b * (1.0 - x).ln() - ln_beta_unchecked(a, b);
    if x < (a + 1.0) / (a + b + 2.0) {
        (ln_front.exp() * beta_cf(x, a, b) / a).clamp(0.0, 1.0)
    } else {
        (1.0 - ln_front.exp() * beta_cf(1.0 - x, b, a) / b).clamp(0.0, 1.0)
    }
}

/// Continued fraction for the incomplete beta function (modified Lentz).
fn beta_cf(x: f64, a: f64, b: f64) -> f64 {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Error function, via erf(x) = sign(x) · P(1/2, x²).
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == 0.0 {
        return 0.0;
    }
    let p = gamma_pq(0.5, x * x).0;
    if x > 0.0 {
        p
    } else {
        -p
    }
}

/// Complementary error function 1 − erf(x) without cancellation in the
/// upper tail.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == 0.0 {
        return 1.0;
    }
    let (p, q) = gamma_pq(0.5, x * x);
    if x > 0.0 {
        q
    } else {
        1.0 + p
    }
}

/// Standard normal CDF Φ(z).
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Adaptive Gauss–Kronrod (7/15) quadrature of `f` over `[a, b]`.
///
/// Infinite endpoints are mapped onto finite intervals. Subdivision stops
/// once the summed error estimate falls below `max(tol, tol·|I|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a.is_nan() || b.is_nan() {
        return Err(invalid("integration bounds must not be NaN"));
    }
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return integrate(f, b, a, tol).map(|v| -v);
    }
    match (a.is_finite(), b.is_finite()) {
        (true, true) => adaptive(&f, a, b, tol),
        (true, false) => {
            // x = a + t/(1−t), t ∈ [0,1)
            let g = |t: f64| {
                if t >= 1.0 {
                    return 0.0;
                }
                let s = 1.0 - t;
                let v = f(a + t / s) / (s * s);
                if v.is_finite() {
                    v
                } else {
                    0.0
                }
            };
            adaptive(&g, 0.0, 1.0, tol)
        }
        (false, true) => {
            let g = |t: f64| {
                if t >= 1.0 {
                    return 0.0;
                }
                let s = 1.0 - t;
                let v = f(b - t / s) / (s * s);
                if v.is_finite() {
                    v
                } else {
                    0.0
                }
            };
            adaptive(&g, 0.0, 1.0, tol)
        }
        (false, false) => {
            // x = t/(1−t²), t ∈ (−1,1)
            let g = |t: f64| {
                let s = 1.0 - t * t;
                if s <= 0.0 {
                    return 0.0;
                }
                let v = f(t / s) * (1.0 + t * t) / (s * s);
                if v.is_finite() {
                    v
                } else {
                    0.0
                }
            };
            adaptive(&g, -1.0, 1.0, tol)
        }
    }
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    const MAX_INTERVALS: usize = 5000;
    let (v, e) = gk15(f, a, b);
    let mut intervals = vec![(a, b, v, e)];
    let mut total = v;
    let mut err = e;
    while err > tol.max(tol * total.abs()) {
        if intervals.len() >= MAX_INTERVALS {
            return Err(StatError::NoConvergence(format!(
                "quadrature error estimate {err:e} above tolerance {tol:e}"
            )));
        }
        // bisect the interval with the largest error estimate
        let (idx, _) = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("non-empty");
        let (lo, hi, v0, e0) = intervals.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // interval cannot be split further in double precision
            intervals.push((lo, hi, v0, 0.0));
            err -= e0;
            continue;
        }
        let (v1, e1) = gk15(f, lo, mid);
        let (v2, e2) = gk15(f, mid, hi);
        total += v1 + v2 - v0;
        err += e1 + e2 - e0;
        intervals.push((lo, mid, v1, e1));
        intervals.push((mid, hi, v2, e2));
    }
    // re-sum to shed accumulated rounding from the running updates
    Ok(intervals.iter().map(|iv| iv.2).sum())
}

// ---------------------------------------------------------------------------
// Root bracketing and CDF inversion
// ---------------------------------------------------------------------------

/// An interval `[lo, hi]` known to contain a root of `f − target`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
}

impl RootBracket {
    /// `f_lo` and `f_hi` are the shifted values `f(lo) − target` and
    /// `f(hi) − target`; they must not share a strict sign.
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(invalid(format!("bracket requires lo < hi, got [{lo}, {hi}]")));
        }
        if f_lo.is_nan() || f_hi.is_nan() || f_lo * f_hi > 0.0 {
            return Err(invalid(format!(
                "bracket endpoints do not straddle the target: f(lo)={f_lo}, f(hi)={f_hi}"
            )));
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    /// Bracket for `f(x) = target` from explicit endpoints.
    pub fn for_target<F: Fn(f64) -> f64>(f: &F, target: f64, lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, f(lo) - target, f(hi) - target)
    }

    /// Grows `[lo, hi]` geometrically (never past `floor`/`ceiling`) until it
    /// straddles `target` for a non-decreasing `f`.
    pub fn expand<F: Fn(f64) -> f64>(
        f: &F,
        target: f64,
        mut lo: f64,
        mut hi: f64,
        floor: f64,
        ceiling: f64,
    ) -> Result<Self> {
        let mut step = (hi - lo).max(1.0);
        for _ in 0..2000 {
            let f_lo = f(lo) - target;
            if f_lo <= 0.0 || lo <= floor {
                break;
            }
            hi = lo;
            lo = (lo - step).max(floor);
            step *= 2.0;
        }
        let mut step = (hi - lo).max(1.0);
        for _ in 0..2000 {
            let f_hi = f(hi) - target;
            if f_hi >= 0.0 || hi >= ceiling {
                break;
            }
            lo = hi;
            hi = (hi + step).min(ceiling);
            step *= 2.0;
        }
        Self::for_target(f, target, lo, hi)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }
}

/// Solves `f(x) = alpha` for a non-decreasing `f` inside `bracket`.
///
/// Safeguarded secant (Illinois variant of regula falsi) with a bisection
/// step whenever the bracket fails to shrink by half over two iterations.
/// Returns once `|f(x) − alpha| ≤ 1e-12` or the bracket width drops below
/// `1e-13·max(1, |x|)`.
pub fn invert_cdf<F: Fn(f64) -> f64>(f: F, alpha: f64, bracket: RootBracket) -> Result<f64> {
    let RootBracket { mut lo, mut hi, .. } = bracket;
    // the stored values may belong to another target
    let mut f_lo = f(lo) - alpha;
    let mut f_hi = f(hi) - alpha;
    if f_lo > 0.0 || f_hi < 0.0 {
        return Err(invalid(format!(
            "target {alpha} is not bracketed by [{lo}, {hi}]"
        )));
    }
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    let mut side = 0i8;
    let mut width_before = hi - lo;
    for iter in 0..1000 {
        let width = hi - lo;
        let mut x = if iter % 2 == 1 && width > 0.5 * width_before {
            0.5 * (lo + hi)
        } else {
            (lo * f_hi - hi * f_lo) / (f_hi - f_lo)
        };
        if iter % 2 == 1 {
            width_before = width;
        }
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        let fx = f(x) - alpha;
        if fx.abs() <= 1e-12 || width <= 1e-13 * x.abs().max(1.0) {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
            f_lo = fx;
            if side == -1 {
                f_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = x;
            f_hi = fx;
            if side == 1 {
                f_lo *= 0.5;
            }
            side = 1;
        }
        if hi - lo <= 1e-13 * hi.abs().max(lo.abs()).max(1.0) {
            return Ok(if -f_lo < f_hi { lo } else { hi });
        }
    }
    Err(StatError::NoConvergence(format!(
        "quantile inversion for {alpha} did not converge"
    )))
}
