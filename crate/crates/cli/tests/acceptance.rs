//! End-to-end acceptance checks, one PASS/FAIL line per criterion.

mod common;
mod oracle;

use std::ops::Bound;
use std::panic::{catch_unwind, AssertUnwindSafe};

use freqstat::bivariate::{ols_fit, pearson_r};
use freqstat::data::midranks;
use freqstat::descriptive::{gini_from_lorenz, variance_of, variance_shift_theorem};
use freqstat::distributions::{pareto_lorenz, uniform_one_sigma_prob};
use freqstat::distributions::Distribution;
use freqstat::inference::{self as inf, p_value, TailKind};
use freqstat::likert::{cronbach_alpha, ItemMatrix};
use freqstat::matrix::pca_2x2;
use freqstat::sampling::{sampling_distribution_sim, Estimator};
use freqstat::special::{self, integrate};

type Check = fn() -> Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gini() -> Result<(), String> {
    let pts = [(0.0, 0.0), (0.5, 0.01), (0.9, 0.5), (1.0, 1.0)];
    let g = gini_from_lorenz(&pts, None).map_err(|e| e.to_string())?;
    ensure((g - 0.641).abs() <= 0.005, || format!("G+ = {g}"))?;
    ensure((g - 0.64).abs() < 0.005, || format!("G+ = {g} does not print as 0.64"))
}

fn pareto_80_20() -> Result<(), String> {
    let gamma = 5f64.ln() / 4f64.ln();
    let l = pareto_lorenz(gamma, 0.8).map_err(|e| e.to_string())?;
    ensure((l - 0.2).abs() <= 1e-9, || format!("L(0.8) = {l}"))?;
    ensure((gamma - 1.16).abs() <= 0.005, || format!("gamma = {gamma}"))
}

fn uniform_one_sigma() -> Result<(), String> {
    let want = 1.0 / 3f64.sqrt();
    ensure((uniform_one_sigma_prob() - want).abs() <= 1e-12, || "closed form".into())?;
    for (a, b) in [(0.0, 1.0), (-3.0, 5.0), (10.0, 10.25)] {
        let d = Distribution::uniform(a, b).unwrap();
        let m = d.moments();
        let (mu, sd) = (m.mean.value().unwrap(), m.variance.value().unwrap().sqrt());
        let p = d.interval_prob(Bound::Included(mu - sd), Bound::Included(mu + sd));
        ensure((p - want).abs() <= 1e-12, || format!("U({a},{b}): {p}"))?;
        ensure((p - 0.5773).abs() < 1e-4, || format!("U({a},{b}): {p} vs 0.5773"))?;
    }
    Ok(())
}

fn continuous_grid() -> Vec<Distribution> {
    let mut v = Vec::new();
    for (a, b) in [(0.0, 1.0), (-2.0, 3.0), (10.0, 10.5)] {
        v.push(Distribution::uniform(a, b).unwrap());
    }
    for (m, s2) in [(0.0, 1.0), (-3.0, 0.25), (100.0, 400.0)] {
        v.push(Distribution::normal(m, s2).unwrap());
    }
    for df in [1.0, 4.5, 30.0] {
        v.push(Distribution::chi_square(df).unwrap());
    }
    for df in [1.0, 3.5, 40.0] {
        v.push(Distribution::student_t(df).unwrap());
    }
    for (d1, d2) in [(1.0, 8.0), (2.0, 5.0), (5.0, 2.0), (10.0, 30.0)] {
        v.push(Distribution::fisher_f(d1, d2).unwrap());
    }
    for (g, x) in [(1.16, 1.0), (2.5, 3.0), (0.5, 0.1)] {
        v.push(Distribution::pareto(g, x).unwrap());
    }
    for l in [0.5, 1.0, 10.0] {
        v.push(Distribution::exponential(l).unwrap());
    }
    for (mu, s) in [(0.0, 1.0), (2.0, 0.5), (-5.0, 3.0)] {
        v.push(Distribution::logistic(mu, s).unwrap());
    }
    // parameter-free
    v.push(Distribution::special_hyperbolic());
    for (l, s) in [(0.0, 1.0), (2.0, 0.5), (-1.0, 4.0)] {
        v.push(Distribution::cauchy(l, s).unwrap());
    }
    v
}

fn roundtrips() -> Result<(), String> {
    let alphas = [0.001, 0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99, 0.999];
    let mut worst = (0.0f64, String::new());
    for d in continuous_grid() {
        for &a in &alphas {
            let q = d.quantile(a).map_err(|e| format!("{}: {e}", d.label()))?;
            let err = (d.cdf(q) - a).abs();
            if err > worst.0 {
                worst = (err, format!("{} at {a}", d.label()));
            }
        }
    }
    ensure(worst.0 <= 1e-10, || format!("max error {} ({})", worst.0, worst.1))
}

fn normalisation() -> Result<(), String> {
    for d in continuous_grid() {
        let (lo, hi) = d.support();
        let total = integrate(|x| d.density(x), lo, hi, 1e-12).map_err(|e| format!("{}: {e}", d.label()))?;
        ensure((total - 1.0).abs() <= 1e-8, || format!("{}: {total}", d.label()))?;
    }
    let discrete = [
        Distribution::discrete_uniform(vec![1.0, 2.5, 4.0, 7.0]).unwrap(),
        Distribution::bernoulli(0.3).unwrap(),
        Distribution::binomial(1, 0.5).unwrap(),
        Distribution::binomial(20, 0.3).unwrap(),
        Distribution::binomial(200, 0.01).unwrap(),
        Distribution::hypergeometric(5, 10, 20).unwrap(),
        Distribution::hypergeometric(30, 7, 60).unwrap(),
    ];
    for d in discrete {
        let s: f64 = d.support_points().unwrap().iter().map(|&x| d.density(x)).sum();
        ensure((s - 1.0).abs() <= 1e-12, || format!("{}: {s}", d.label()))?;
    }
    Ok(())
}

fn clt_claims() -> Result<(), String> {
    let chi = Distribution::chi_square(60.0).unwrap();
    let nrm = Distribution::normal(60.0, 120.0).unwrap();
    let sup_chi = (0..=1200).map(|i| 10.0 + i as f64 * 0.1).map(|x| (chi.cdf(x) - nrm.cdf(x)).abs()).fold(0.0, f64::max);
    let t = Distribution::student_t(50.0).unwrap();
    let z = Distribution::standard_normal();
    let sup_t = (0..=1000).map(|i| -5.0 + i as f64 * 0.01).map(|x| (t.cdf(x) - z.cdf(x)).abs()).fold(0.0, f64::max);
    ensure(sup_chi <= 0.02 && sup_t <= 0.005, || {
        format!("sup |chi2(60) - N(60,120)| = {sup_chi:.5} (bound 0.02), sup |t(50) - N(0,1)| = {sup_t:.5} (bound 0.005)")
    })
}

fn monte_carlo_clt() -> Result<(), String> {
    let u = Distribution::uniform(0.0, 1.0).unwrap();
    let sim = sampling_distribution_sim(&u, Estimator::Mean, 50, 5000, 20_240_601).map_err(|e| e.to_string())?;
    let se = (1.0 / 12.0 / 50.0f64).sqrt();
    let z: Vec<f64> = sim.values.iter().map(|m| (m - 0.5) / se).collect();
    let t = inf::ks_test_normal(&z, 0.01).map_err(|e| e.to_string())?;
    ensure(!t.reject, || format!("KS rejected: D = {}, p = {}", t.statistic, t.p_value))
}

fn fixture(seed: u64, n: usize) -> Vec<f64> {
    Distribution::normal(5.0, 4.0).unwrap().random_sample(n, seed).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn identities() -> Result<(), String> {
    for seed in 0..1000u64 {
        let n = 5 + (seed % 40) as usize;
        let x = fixture(seed, n);
        let y: Vec<f64> = fixture(seed + 50_000, n).iter().zip(&x).map(|(e, x)| 0.7 * x + e).collect();

        let fit = ols_fit(&x, &y).map_err(|e| e.to_string())?;
        let r = pearson_r(&x, &y).map_err(|e| e.to_string())?;
        ensure((fit.r_squared - r * r).abs() <= 1e-12, || format!("seed {seed}: B = {} vs r² = {}", fit.r_squared, r * r))?;

        let v1 = variance_of(&x).unwrap();
        let v2 = variance_shift_theorem(&x).unwrap();
        ensure(rel(v1, v2) <= 1e-9, || format!("seed {seed}: shift theorem {v1} vs {v2}"))?;

        let reg = inf::regression_inference(&x, &y, 0.05).map_err(|e| e.to_string())?;
        let f = reg.f_test.as_ref().unwrap().statistic;
        let tb = reg.t_test_b.as_ref().unwrap().statistic;
        ensure(rel(f, tb * tb) <= 1e-9, || format!("seed {seed}: F = {f}, t² = {}", tb * tb))?;

        let k = 2 + (seed % 4) as usize;
        let groups: Vec<Vec<f64>> = (0..k).map(|g| fixture(seed * 10 + g as u64 + 100_000, 3 + g)).collect();
        let a = inf::anova_oneway(&groups, 0.05).map_err(|e| e.to_string())?;
        let t = &a.table;
        ensure(rel(t.tss, t.bss + t.rss) <= 1e-9, || format!("seed {seed}: TSS decomposition"))?;

        let (g1, g2) = (&groups[0], &groups[1]);
        let u = inf::mann_whitney_u(g1, g2, TailKind::TwoSided, 0.05).map_err(|e| e.to_string())?;
        ensure(u.u1 + u.u2 == (g1.len() * g2.len()) as f64, || format!("seed {seed}: U1 + U2"))?;

        // rounded data to force ties and zero differences
        let xa: Vec<f64> = x.iter().map(|v| v.round()).collect();
        let xb: Vec<f64> = y.iter().map(|v| v.round()).collect();
        if let Ok(w) = inf::wilcoxon_signed_rank(&xa, &xb, TailKind::TwoSided, 0.05) {
            let m = w.n_reduced as f64;
            ensure(w.w_plus + w.w_minus == m * (m + 1.0) / 2.0, || format!("seed {seed}: W+ + W-"))?;
        }

        let ranks = midranks(&xa);
        let s: f64 = ranks.iter().sum();
        ensure(s == (n * (n + 1)) as f64 / 2.0, || format!("seed {seed}: rank sum {s}"))?;
    }
    Ok(())
}

fn null_laws() -> Vec<Distribution> {
    vec![
        Distribution::standard_normal(),
        Distribution::student_t(4.0).unwrap(),
        Distribution::student_t(27.3).unwrap(),
        Distribution::chi_square(1.0).unwrap(),
        Distribution::chi_square(9.0).unwrap(),
        Distribution::fisher_f(2.0, 12.0).unwrap(),
        Distribution::fisher_f(9.0, 9.0).unwrap(),
    ]
}

fn type_one_rate(name: &str, reps: u64, mut run: impl FnMut(u64) -> bool) -> Result<(), String> {
    let rejections = (0..reps).filter(|&i| run(i)).count();
    let rate = rejections as f64 / reps as f64;
    ensure((0.035..=0.065).contains(&rate), || format!("{name}: type-I rate {rate}"))
}

fn calibration() -> Result<(), String> {
    for d in null_laws() {
        let q = d.quantile(0.95).map_err(|e| e.to_string())?;
        let p = p_value(TailKind::RightSided, &d, q);
        ensure((p - 0.05).abs() <= 1e-8, || format!("{}: p = {p}", d.label()))?;
    }
    let a = 0.05;
    let two = TailKind::TwoSided;
    let norm = |seed: u64, n: usize| Distribution::normal(0.0, 1.0).unwrap().random_sample(n, seed).unwrap();
    let reps = 2000;
    type_one_rate("t", reps, |i| inf::t_test_one_sample(&norm(i, 12), 0.0, two, a).unwrap().reject)?;
    type_one_rate("F", reps, |i| {
        inf::f_test_two_variances(&norm(i, 10), &norm(i + 1_000_000, 15), two, a).unwrap().reject
    })?;
    type_one_rate("chi2", reps, |i| inf::chi2_variance_test(&norm(i + 2_000_000, 15), 1.0, two, a).unwrap().reject)?;
    type_one_rate("ANOVA", reps, |i| {
        let g: Vec<Vec<f64>> = (0..3).map(|k| norm(i * 3 + k + 3_000_000, 8)).collect();
        inf::anova_oneway(&g, a).unwrap().test.reject
    })?;
    type_one_rate("U", reps, |i| {
        inf::mann_whitney_u(&norm(i + 4_000_000, 20), &norm(i + 5_000_000, 20), two, a).unwrap().test.reject
    })?;
    type_one_rate("Wilcoxon", reps, |i| {
        inf::wilcoxon_signed_rank(&norm(i + 6_000_000, 30), &norm(i + 7_000_000, 30), two, a).unwrap().test.reject
    })?;
    type_one_rate("KW", reps, |i| {
        let g: Vec<Vec<f64>> = (0..3).map(|k| norm(i * 3 + k + 8_000_000, 10)).collect();
        inf::kruskal_wallis(&g, a).unwrap().test.reject
    })
}

fn special_functions() -> Result<(), String> {
    let cmp = |what: &str, got: f64, want: f64, tol: f64| {
        ensure((got - want).abs() <= tol, || format!("{what}: {got} vs oracle {want}"))
    };
    for x in [0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 7.25, 10.0, 33.3, 100.0] {
        let got = special::ln_gamma(x).unwrap();
        cmp(&format!("ln_gamma({x})"), got, oracle::ln_gamma(x), 1e-10 * got.abs().max(1.0))?;
    }
    for a in [0.5, 1.0, 2.5, 5.0, 10.0] {
        for x in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
            let got = special::reg_inc_gamma_p(a, x).unwrap();
            cmp(&format!("P({a}, {x})"), got, oracle::reg_inc_gamma_p(a, x), 1e-10)?;
        }
    }
    for (a, b) in [(0.5, 0.5), (1.0, 3.0), (2.0, 5.0), (0.7, 4.5), (10.0, 10.0), (3.0, 0.8)] {
        for x in [0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
            let got = special::reg_inc_beta_i(x, a, b).unwrap();
            cmp(&format!("I_{x}({a}, {b})"), got, oracle::reg_inc_beta_i(x, a, b), 1e-10)?;
        }
    }
    for i in -40..=40 {
        let x = i as f64 * 0.1;
        cmp(&format!("erf({x})"), special::erf(x), oracle::erf(x), 1e-10)?;
    }
    Ok(())
}

fn cronbach() -> Result<(), String> {
    let col = [1u32, 2, 3, 4, 5, 3, 2, 4];
    let rows: Vec<Vec<u32>> = col.iter().map(|&v| vec![v; 5]).collect();
    let a = cronbach_alpha(&ItemMatrix::likert5(rows).unwrap()).map_err(|e| e.to_string())?;
    ensure((a - 1.0).abs() <= 1e-12, || format!("identical items: {a}"))?;
    // columns of a Hadamard matrix other than the constant one, shifted
    let h = [[1i32, 1, 1], [-1, 1, -1], [1, -1, -1], [-1, -1, 1]];
    let rows: Vec<Vec<u32>> = h.iter().map(|r| r.iter().map(|v| (v + 3) as u32).collect()).collect();
    let a = cronbach_alpha(&ItemMatrix::likert5(rows).unwrap()).map_err(|e| e.to_string())?;
    ensure(a.abs() <= 1e-12, || format!("uncorrelated items: {a}"))
}

fn pca() -> Result<(), String> {
    for r in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let p = pca_2x2(r).map_err(|e| e.to_string())?;
        let [l1, l2] = p.eigenvalues;
        ensure((l1 + l2 - 2.0).abs() <= 1e-12, || format!("trace at r = {r}"))?;
        ensure((l1 * l2 - (1.0 - r * r)).abs() <= 1e-12, || format!("determinant at r = {r}"))?;
        let back = p.reconstruct();
        let rm = [[1.0, r], [r, 1.0]];
        let err = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| (back[i][j] - rm[i][j]).abs()).fold(0.0, f64::max);
        ensure(err <= 1e-12, || format!("reconstruction at r = {r}: {err}"))?;
    }
    Ok(())
}

fn cli_determinism() -> Result<(), String> {
    for (name, args) in common::CASES {
        let first = common::run_case(args);
        let second = common::run_case(args);
        ensure(first.status.success(), || format!("{name} failed"))?;
        ensure(first.stdout == second.stdout, || format!("{name}: runs differ"))?;
        let golden = std::fs::read(common::golden_path(name)).map_err(|e| format!("{name}: {e}"))?;
        ensure(golden == first.stdout, || format!("{name}: differs from golden file"))?;
    }
    Ok(())
}

/// Criteria whose bound is below the exact value for the true laws, so no
/// correct implementation can meet them. They still print FAIL.
const KNOWN_UNMET: &[usize] = &[6];

fn main() {
    let criteria: [(&str, Check); 13] = [
        ("Gini reproduction", gini),
        ("Pareto 80/20", pareto_80_20),
        ("Uniform one-sigma", uniform_one_sigma),
        ("Quantile/CDF roundtrips", roundtrips),
        ("Normalisation", normalisation),
        ("CLT approximation claims", clt_claims),
        ("Monte-Carlo CLT", monte_carlo_clt),
        ("Algebraic identities", identities),
        ("p-value calibration", calibration),
        ("Special-function oracle", special_functions),
        ("Cronbach edge cases", cronbach),
        ("PCA invariance", pca),
        ("CLI determinism", cli_determinism),
    ];
    let mut unexpected = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let known = KNOWN_UNMET.contains(&id);
        match outcome {
            Ok(()) => {
                println!("PASS {id:>2} {name}");
                if known {
                    println!("     criterion {id} is listed as unattainable but passed; update KNOWN_UNMET");
                    unexpected += 1;
                }
            }
            Err(why) => {
                let tag = if known { " [known: bound is below the exact distance]" } else { "" };
                println!("FAIL {id:>2} {name}: {why}{tag}");
                if !known {
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
