#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub const DATA: &str = "tests/fixtures/survey.csv";

/// One invocation per subcommand (and per test name), run against the
/// survey fixture.
pub const CASES: &[(&str, &[&str])] = &[
    ("describe_height", &["describe", "height"]),
    ("describe_income", &["--scale", "income=ratio", "describe", "income"]),
    ("describe_sex", &["describe", "sex"]),
    ("freq_sex", &["freq", "sex"]),
    ("freq_height_bins", &["freq", "height", "--bins", "140,160,170,180,200"]),
    ("crosstab", &["crosstab", "sex", "smoker"]),
    ("corr_pearson", &["corr", "height", "weight"]),
    ("corr_spearman", &["corr", "q1", "q2", "--spearman", "--tail", "right"]),
    ("regress", &["regress", "weight", "height"]),
    ("dist_pareto", &["dist", "pareto", "1.16", "1", "quantile", "0.8"]),
    ("dist_normal_cdf", &["dist", "normal", "-1", "4", "cdf", "-1", "0", "2.5"]),
    ("dist_binomial_moments", &["dist", "binomial", "10", "0.3", "moments"]),
    ("test_t1", &["test", "t1", "--col", "height", "--mu0", "170"]),
    ("test_chi2_var", &["test", "chi2-var", "--col", "height", "--sigma2", "64", "--tail", "right"]),
    ("test_t2", &["test", "t2", "--col", "height", "--by", "sex"]),
    ("test_welch", &["test", "welch", "--col", "height", "--by", "sex"]),
    ("test_f", &["test", "f", "--col", "height", "--by", "sex"]),
    ("test_paired", &["test", "paired", "--col", "post", "--col2", "pre", "--tail", "right"]),
    ("test_gof", &["test", "gof", "--col", "smoker", "--probs", "0.3,0.7"]),
    ("test_homogeneity", &["test", "homogeneity", "--col", "sex", "--col2", "smoker"]),
    ("test_independence", &["test", "independence", "--col", "sex", "--col2", "smoker"]),
    ("test_anova", &["test", "anova", "--col", "height", "--by", "group"]),
    ("test_posthoc", &["test", "posthoc", "--col", "height", "--by", "group"]),
    ("test_levene", &["test", "levene", "--col", "height", "--by", "group"]),
    ("test_mwu", &["test", "mwu", "--col", "height", "--by", "sex"]),
    ("test_wilcoxon", &["test", "wilcoxon", "--col", "post", "--col2", "pre"]),
    ("test_kw", &["test", "kw", "--col", "height", "--by", "group"]),
    ("test_ks", &["test", "ks", "--col", "height"]),
    ("test_corr", &["test", "corr", "--col", "height", "--col2", "weight"]),
    ("test_spearman", &["test", "spearman", "--col", "q1", "--col2", "q2"]),
    ("test_ci_mean", &["test", "ci-mean", "--col", "height", "--level", "0.99"]),
    ("test_ci_var", &["test", "ci-var", "--col", "height"]),
    ("likert", &["likert", "q1", "q2", "q3", "q4", "q5", "--reversed", "q5"]),
    ("sample_srs", &["sample", "srs", "--population", "100", "--n", "5", "--seed", "42"]),
    ("sample_inclusion", &["sample", "inclusion", "--population", "100", "--n", "5"]),
    ("sample_stratified", &["sample", "stratified", "--strata", "10,20,70", "--n", "9"]),
    ("sample_cluster", &["sample", "cluster", "--clusters", "10", "--k", "3", "--seed", "1"]),
    ("sample_draw", &["sample", "draw", "--dist", "normal 0 1", "--n", "4", "--seed", "7"]),
    ("sample_simulate", &["sample", "simulate", "--dist", "uniform 0 1", "--n", "10", "--reps", "100", "--seed", "3"]),
    ("pca2", &["pca2", "height", "weight"]),
    ("dist_matrix_euclid", &["dist-matrix", "height", "weight", "--metric", "euclid"]),
    ("dist_matrix_mahalanobis", &["dist-matrix", "height", "weight", "q1", "--metric", "mahalanobis"]),
];

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freqstat"))
        .current_dir(root())
        .args(args)
        .output()
        .expect("spawn freqstat")
}

/// Runs a golden case with the fixture attached.
pub fn run_case(args: &[&str]) -> Output {
    let mut full = vec!["--data", DATA];
    full.extend_from_slice(args);
    run(&full)
}

pub fn golden_path(name: &str) -> PathBuf {
    root().join("tests/golden").join(format!("{name}.json"))
}

pub fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}
