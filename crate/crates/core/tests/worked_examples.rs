use freqstat::bivariate::{
    chi2_descriptive, correlation_matrix_inverse_2x2, cramers_v, ols_fit, pearson_r, sample_covariance, spearman_rs,
    ContingencyTable,
};
use freqstat::data::{build_binned, build_frequency, midranks, BinnedDistribution, EmpiricalCdf, RawSample};
use freqstat::descriptive::{
    binned_quantile, dispersion, five_number_summary, gini_from_lorenz, quantile, standardize, variance_from_binned,
    weighted_mean,
};
use freqstat::distributions::{k_sigma_probability, pareto_exceedance_ratio, pareto_lorenz, Distribution};
use freqstat::inference::{
    anova_oneway, chi2_gof, chi2_table_test, ci_mean, kruskal_wallis, levene_test, mann_whitney_u, pareto_loglog_fit,
    t_test_paired, t_test_two_independent, wilcoxon_signed_rank, TableTestMode, TailKind,
};
use freqstat::likert::{cronbach_alpha, item_analysis, total_score, ItemMatrix};
use freqstat::matrix::{euclidean_distance, mahalanobis_distance, pca_2x2};
use freqstat::probability::{
    bayes_from_likelihoods, binomial_coefficient, count_arrangements, factorial, Arrangement, Event,
    FiniteProbabilitySpace,
};
use freqstat::sampling::{inclusion_probabilities, stratified_allocation, Estimator};
use freqstat::special::{erf, ln_gamma, reg_inc_gamma_p};

fn close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
}

fn metric(v: &[f64]) -> RawSample {
    RawSample::metric(v.to_vec()).unwrap()
}

#[test]
fn frequency_table_counts() {
    let f = build_frequency(&metric(&[1.0, 1.0, 2.0, 3.0, 3.0, 3.0]));
    let got: Vec<(f64, u64, f64)> = f.entries().iter().map(|e| (e.value, e.count, e.relative)).collect();
    assert_eq!(got.len(), 3);
    for ((v, c, h), (ev, ec, eh)) in got.into_iter().zip([(1.0, 2, 1.0 / 3.0), (2.0, 1, 1.0 / 6.0), (3.0, 3, 0.5)]) {
        assert_eq!((v, c), (ev, ec));
        close(h, eh, 1e-15);
    }
}

#[test]
fn binned_boundary_goes_up() {
    let b = build_binned(&metric(&[1.0]), &[0.0, 1.0, 2.0]).unwrap();
    let counts: Vec<u64> = b.bins().iter().map(|b| b.count).collect();
    assert_eq!(counts, vec![0, 1]);
}

#[test]
fn ecdf_interval_rules() {
    let f = EmpiricalCdf::Discrete(freqstat::data::FrequencyDistribution::from_counts(&[(1.0, 1), (2.0, 1)]).unwrap());
    close(f.eval(1.0), 0.5, 1e-15);
    close(f.interval_prob(false, 1.0, false, 2.0).unwrap(), 1.0, 1e-15);
    close(f.interval_prob(true, 1.0, true, 2.0).unwrap(), 0.0, 1e-15);
    let b = EmpiricalCdf::Binned(BinnedDistribution::from_counts(&[0.0, 2.0], &[5]).unwrap());
    close(b.eval(1.0), 0.5, 1e-15);
    close(b.interval_prob(false, 0.5, true, 1.5).unwrap(), 0.5, 1e-15);
    assert_eq!(b.eval(-1e9), 0.0);
    assert_eq!(b.eval(1e9), 1.0);
}

#[test]
fn midranks_of_ties() {
    assert_eq!(midranks(&[10.0, 20.0, 20.0, 30.0]), vec![1.0, 2.5, 2.5, 4.0]);
    assert_eq!(midranks(&[7.0, 7.0, 7.0]), vec![2.0, 2.0, 2.0]);
}

#[test]
fn counting_rules() {
    assert_eq!(factorial(5).unwrap(), 120);
    // Pascal's triangle up to row 49
    let mut row = vec![1u128];
    for _ in 0..49 {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    assert_eq!(binomial_coefficient(49, 6).unwrap(), row[6]);
    assert_eq!(row[6], 13_983_816);
    assert_eq!(count_arrangements(&Arrangement::PermAllDistinct { n: 4 }).unwrap(), 24);
    assert_eq!(count_arrangements(&Arrangement::VarRep { n: 2, k: 3 }).unwrap(), 8);
    assert_eq!(count_arrangements(&Arrangement::CombRep { n: 3, k: 2 }).unwrap(), 6);
}

#[test]
fn fair_die_conditioning() {
    let die = FiniteProbabilitySpace::uniform_numbered(6).unwrap();
    let six = Event::new(&[5]).unwrap();
    let even = Event::new(&[1, 3, 5]).unwrap();
    close(die.event_prob(&even).unwrap(), 0.5, 1e-15);
    close(die.conditional_prob(&six, &even).unwrap(), 1.0 / 3.0, 1e-15);
    close(die.event_prob(&Event::empty()).unwrap(), 0.0, 0.0);
}

#[test]
fn bayes_two_causes() {
    let post = bayes_from_likelihoods(&[0.3, 0.7], &[0.5, 0.1]).unwrap();
    close(post[0], 0.15 / 0.22, 1e-12);
    close(post[1], 0.07 / 0.22, 1e-12);
}

#[test]
fn location_and_spread() {
    close(quantile(&metric(&[1.0, 2.0, 3.0, 4.0]), 0.5).unwrap(), 2.5, 1e-12);
    close(quantile(&metric(&[1.0, 2.0, 3.0, 4.0, 5.0]), 0.5).unwrap(), 3.0, 1e-12);
    let s = five_number_summary(&metric(&[1.0, 2.0, 3.0, 4.0, 5.0])).unwrap();
    assert_eq!((s.min, s.q1, s.median, s.q3, s.max), (1.0, 2.0, 3.0, 4.0, 5.0));

    let d = dispersion(&metric(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0])).unwrap();
    let dev: f64 = [2.0f64, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0].iter().map(|x| (x - 5.0).powi(2)).sum();
    close(d.variance, dev / 7.0, 1e-12);
    close(d.std_dev, (32.0f64 / 7.0).sqrt(), 1e-12);
    close(weighted_mean(&[1.0, 3.0], &[0.75, 0.25]).unwrap(), 1.5, 1e-15);
}

#[test]
fn binned_measures() {
    let one = BinnedDistribution::from_counts(&[0.0, 10.0], &[4]).unwrap();
    close(binned_quantile(&one, 0.3).unwrap(), 3.0, 1e-12);
    let unit = BinnedDistribution::from_counts(&[0.0, 1.0], &[100]).unwrap();
    close(variance_from_binned(&unit).unwrap(), (1.0 / 12.0) * (100.0 / 99.0), 1e-12);
}

#[test]
fn z_scores() {
    let z = standardize(&metric(&[1.0, 2.0, 3.0])).unwrap();
    for (a, b) in z.iter().zip([-1.0, 0.0, 1.0]) {
        close(*a, b, 1e-15);
    }
}

#[test]
fn gini_from_aggregated_shares() {
    let pts = [(0.0, 0.0), (0.5, 0.01), (0.9, 0.5), (1.0, 1.0)];
    close(gini_from_lorenz(&pts, None).unwrap(), 0.64, 0.01);
}

#[test]
fn association_in_tables() {
    let t = ContingencyTable::from_counts(vec![vec![10, 0], vec![0, 10]]).unwrap();
    close(chi2_descriptive(&t).unwrap(), 20.0, 1e-12);
    close(cramers_v(&t).unwrap(), 1.0, 1e-12);
    let outer = ContingencyTable::from_counts(vec![vec![2, 4], vec![3, 6]]).unwrap();
    close(chi2_descriptive(&outer).unwrap(), 0.0, 1e-12);
}

#[test]
fn covariance_and_correlation() {
    close(sample_covariance(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap(), -1.0, 1e-15);
    close(sample_covariance(&[1.0, -1.0, 1.0, -1.0], &[1.0, 1.0, -1.0, -1.0]).unwrap(), 0.0, 1e-15);
    close(pearson_r(&[1.0, 2.0, 5.0], &[3.0, 5.0, 11.0]).unwrap(), 1.0, 1e-12);
    let inv = correlation_matrix_inverse_2x2(0.0).unwrap();
    assert_eq!(inv, [[1.0, 0.0], [0.0, 1.0]]);
    let rs = spearman_rs(
        &RawSample::ordinal(vec![1.0, 2.0, 3.0, 4.0]).unwrap(),
        &RawSample::ordinal(vec![2.0, 1.0, 4.0, 3.0]).unwrap(),
    )
    .unwrap();
    close(rs, 0.6, 1e-12);
}

#[test]
fn least_squares_beats_a_grid() {
    let (xs, ys) = ([1.0, 2.0, 3.0], [1.0, 3.0, 2.0]);
    let fit = ols_fit(&xs, &ys).unwrap();
    let s = |a: f64, b: f64| xs.iter().zip(&ys).map(|(x, y)| (y - a - b * x).powi(2)).sum::<f64>();
    let best = s(fit.a, fit.b);
    let mut grid_best = f64::INFINITY;
    let mut at = (0.0, 0.0);
    for i in -300..=300 {
        for j in -300..=300 {
            let (a, b) = (i as f64 / 100.0, j as f64 / 100.0);
            let v = s(a, b);
            if v < grid_best {
                grid_best = v;
                at = (a, b);
            }
        }
    }
    assert!(best <= grid_best + 1e-12);
    close(fit.a, at.0, 0.01);
    close(fit.b, at.1, 0.01);
}

#[test]
fn special_functions_anchor_points() {
    close(ln_gamma(0.5).unwrap(), std::f64::consts::PI.sqrt().ln(), 1e-12);
    close(ln_gamma(6.0).unwrap(), 120f64.ln(), 1e-12);
    for x in [0.5, 1.0, 2.0] {
        close(reg_inc_gamma_p(1.0, x).unwrap(), 1.0 - (-x as f64).exp(), 1e-13);
    }
    close(erf(10.0), 1.0, 1e-15);
}

#[test]
fn distribution_values() {
    close(Distribution::uniform(0.0, 5.0).unwrap().density(2.0), 0.2, 1e-15);
    let exact = 210.0 * 0.6f64.powi(6) * 0.4f64.powi(4);
    close(Distribution::binomial(10, 0.6).unwrap().density(6.0), exact, 1e-12);
    close(Distribution::special_hyperbolic().density(0.0), 1.0 / 2f64.ln(), 1e-12);
    close(Distribution::pareto(2.0, 1.0).unwrap().cdf(2.0), 0.75, 1e-15);
    close(Distribution::pareto(2.0, 1.0).unwrap().quantile(0.75).unwrap(), 2.0, 1e-12);
    close(Distribution::exponential(1.0).unwrap().cdf(2f64.ln()), 0.5, 1e-15);
    close(Distribution::logistic(3.0, 7.0).unwrap().quantile(0.5).unwrap(), 3.0, 1e-9);
    close(Distribution::standard_normal().quantile(0.975).unwrap(), 1.959963984540054, 1e-9);

    let m = Distribution::binomial(10, 0.6).unwrap().moments();
    close(m.mean.value().unwrap(), 6.0, 1e-12);
    close(m.variance.value().unwrap(), 2.4, 1e-12);
    let c = Distribution::cauchy(1.0, 1.0).unwrap().moments();
    assert!(!c.mean.is_present() && !c.variance.is_present());
    let sh = Distribution::special_hyperbolic();
    let ln2 = 2f64.ln();
    close(sh.moments().mean.value().unwrap(), (1.0 - ln2) / ln2, 1e-9);
    close(sh.expect(|x| x).unwrap(), (1.0 - ln2) / ln2, 1e-7);
}

#[test]
fn sigma_rules_and_pareto_shares() {
    close(k_sigma_probability(1.0).unwrap(), 0.682689492137086, 1e-9);
    close(k_sigma_probability(2.0).unwrap(), 0.954499736103642, 1e-9);
    close(pareto_lorenz(5f64.ln() / 4f64.ln(), 0.8).unwrap(), 0.2, 1e-12);
    close(pareto_exceedance_ratio(2.0, 2.0).unwrap(), 0.25, 1e-15);
}

#[test]
fn sampling_arithmetic() {
    let p = inclusion_probabilities(10, 2).unwrap();
    close(p.unit, 0.2, 1e-15);
    close(p.joint, 0.2 / 9.0, 1e-15);
    assert_eq!(stratified_allocation(&[90, 10], 10).unwrap(), vec![9, 1]);
    assert_eq!(stratified_allocation(&[33, 33, 34], 10).unwrap().iter().sum::<u64>(), 10);
    let se = Estimator::Mean.standard_error(5, 2.5f64.sqrt()).unwrap();
    close(se, (2.5f64 / 5.0).sqrt(), 1e-15);
    close(Estimator::Skewness.standard_error(10, 1.0).unwrap(), 0.6870, 5e-5);
}

#[test]
fn interval_for_a_mean() {
    // 100 values with mean 50 and standard deviation exactly 10
    let mut xs: Vec<f64> = (0..50).flat_map(|_| [40.0, 60.0]).collect();
    let s = (xs.iter().map(|x: &f64| (x - 50.0).powi(2)).sum::<f64>() / 99.0).sqrt();
    for x in xs.iter_mut() {
        *x = 50.0 + (*x - 50.0) * 10.0 / s;
    }
    let ci = ci_mean(&xs, 0.95).unwrap();
    close((ci.upper - ci.lower) / 2.0, 1.984217, 1e-5);
}

#[test]
fn goodness_of_fit_by_hand() {
    let t = chi2_gof(&[15, 5], &[0.5, 0.5], 0, 0.05).unwrap();
    close(t.statistic, 5.0, 1e-12);
    assert_eq!(t.df, vec![1.0]);
}

#[test]
fn paired_and_rank_tests() {
    let t = t_test_paired(&[3.0, 5.0, 7.0], &[1.0, 2.0, 3.0], TailKind::TwoSided, 0.05).unwrap();
    close(t.statistic, 3.0 * 3f64.sqrt(), 1e-12);
    let w = wilcoxon_signed_rank(&[-2.0, -1.0, 1.0, 2.0], &[0.0; 4], TailKind::TwoSided, 0.05).unwrap();
    assert_eq!((w.w_plus, w.w_minus), (5.0, 5.0));
    close(w.test.statistic, 0.0, 1e-15);
    let z = wilcoxon_signed_rank(&[0.0, 0.0, 3.0], &[0.0; 3], TailKind::TwoSided, 0.05).unwrap();
    assert_eq!((z.n_reduced, z.w_plus), (1, 1.0));
    let u = mann_whitney_u(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], TailKind::TwoSided, 0.05).unwrap();
    assert_eq!(u.u2, 0.0);
}

#[test]
fn welch_against_direct_formula() {
    let (x1, x2) = ([1.0, 2.0, 3.0], [4.0, 5.0, 7.0]);
    let t = t_test_two_independent(&x1, &x2, false, TailKind::TwoSided, 0.05).unwrap();
    let (v1, v2) = (1.0 / 3.0, (7.0 / 3.0) / 3.0);
    let m2 = 16.0 / 3.0;
    close(t.statistic, (2.0 - m2) / (v1 + v2 as f64).sqrt(), 1e-12);
    let df = (v1 + v2) * (v1 + v2) / (v1 * v1 / 2.0 + v2 * v2 / 2.0);
    close(t.df[0], df, 1e-12);
}

#[test]
fn tables_and_groups() {
    let t = ContingencyTable::from_counts(vec![vec![10, 0], vec![0, 10]]).unwrap();
    let out = chi2_table_test(&t, TableTestMode::Independence, 0.05).unwrap();
    close(out.test.statistic, 20.0, 1e-12);
    assert_eq!(out.test.df, vec![1.0]);

    let same = vec![vec![1.0, 2.0, 3.0]; 3];
    let a = anova_oneway(&same, 0.05).unwrap();
    assert_eq!(a.table.bss, 0.0);
    close(a.test.p_value, 1.0, 1e-12);
    assert!(anova_oneway(&[vec![0.0, 0.0], vec![1.0, 1.0]], 0.05).is_err());

    let sep: Vec<Vec<f64>> = (0..3).map(|g| (1..=5).map(|i| (g * 5 + i) as f64).collect()).collect();
    close(kruskal_wallis(&sep, 0.05).unwrap().test.statistic, 12.5, 1e-12);
    let balanced = vec![
        vec![1.0, 5.0, 9.0, 12.0, 13.0],
        vec![2.0, 6.0, 8.0, 10.0, 14.0],
        vec![3.0, 4.0, 7.0, 11.0, 15.0],
    ];
    let kw = kruskal_wallis(&balanced, 0.05).unwrap();
    assert!(kw.rank_sums.iter().all(|r| (*r - 40.0).abs() < 1e-12), "{:?}", kw.rank_sums);
    close(kw.test.statistic, 0.0, 1e-12);
}

#[test]
fn levene_detects_scale_ratio() {
    let z = Distribution::standard_normal().random_sample(100, 7).unwrap();
    let g1 = z[..50].to_vec();
    let g2: Vec<f64> = z[50..].iter().map(|v| 10.0 * v).collect();
    assert!(levene_test(&[g1, g2], 0.05).unwrap().p_value < 0.01);
}

#[test]
fn loglog_recovers_power_law() {
    let xs: Vec<f64> = (1..=10).map(|i| i as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|x| 7.0 * x.powi(-3)).collect();
    let f = pareto_loglog_fit(&xs, &ys).unwrap();
    close(f.slope, -3.0, 1e-10);
    close(f.gamma_hat, 2.0, 1e-10);
    close(f.k_hat, 7.0, 1e-9);
    let flat = pareto_loglog_fit(&xs, &[2.0; 10]).unwrap();
    close(flat.gamma_hat, -1.0, 1e-12);
    assert!(!flat.notes.is_empty());
}

#[test]
fn likert_scores() {
    let all3 = ItemMatrix::likert5(vec![vec![3; 10]; 4]).unwrap();
    assert_eq!(total_score(&all3), vec![30.0; 4]);
    let same = ItemMatrix::likert5((1..=5).map(|v| vec![v; 4]).collect()).unwrap();
    close(cronbach_alpha(&same).unwrap(), 1.0, 1e-12);
    let a = item_analysis(&same).unwrap();
    assert!(a.dropped.is_empty());
}

#[test]
fn matrix_tools() {
    let p = pca_2x2(0.5).unwrap();
    close(p.eigenvalues[0], 1.5, 1e-15);
    close(p.eigenvalues[1], 0.5, 1e-15);
    close(euclidean_distance(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0, 1e-15);
    let id = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
    close(mahalanobis_distance(&[0.0, 0.0], &[3.0, 4.0], &id).unwrap(), 5.0, 1e-15);
}

#[test]
fn ks_on_uniform_data() {
    let u = Distribution::uniform(0.0, 1.0).unwrap().random_sample(200, 3).unwrap();
    let t = freqstat::inference::ks_test_normal(&u, 0.05).unwrap();
    assert!(t.p_value < 0.05, "p = {}", t.p_value);
}
