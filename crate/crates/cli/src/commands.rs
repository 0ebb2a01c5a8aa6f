//! Command dispatch over the library.

use serde::Serialize;
use serde_json::{json, Value};

use freqstat::bivariate::{
    association_strength, chi2_descriptive, conditional_dist, contingency_from_pairs, correlation_strength,
    cramers_v, pearson_r, spearman_rs, Conditioning,
};
use freqstat::data::{build_binned, build_frequency, ScaleLevel};
use freqstat::descriptive::{
    arithmetic_mean, dispersion, five_number_summary, gini_normalized, lorenz_points, median, mode, quantile, shape,
};
use freqstat::distributions::Distribution;
use freqstat::inference::{self as inf, TableTestMode, TailKind};
use freqstat::likert::{self, ItemMatrix, Polarity, TotalMode};
use freqstat::matrix::{pca_2x2, proximity_matrix, Metric};
use freqstat::sampling::{self, Estimator};
use freqstat::Measure;

use crate::cli::{Command, SampleArgs, TestArgs};
use crate::dataset::Dataset;
use crate::error::{usage, CliError};

pub struct Outcome {
    pub inputs: Value,
    pub results: Value,
    pub warnings: Vec<String>,
    pub seed: Option<u64>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn outcome(inputs: Value, results: Value, warnings: Vec<String>) -> Outcome {
    Outcome {
        inputs,
        results,
        warnings,
        seed: None,
    }
}

fn data_inputs(data: &Dataset, used: &[&str]) -> Result<Value, CliError> {
    let mut cols = Vec::new();
    for name in used {
        let c = data.column(name)?;
        cols.push(json!({"name": c.name, "scale": c.scale}));
    }
    Ok(json!({"n": data.n(), "m": data.m(), "columns": cols}))
}

fn tail(s: &str) -> Result<TailKind, CliError> {
    s.parse().map_err(|_| usage(format!("unknown tail '{s}'; use two-sided, left or right")))
}

fn need_data(data: Option<&Dataset>) -> Result<&Dataset, CliError> {
    data.ok_or_else(|| usage("this command needs --data <file>"))
}

pub fn run(cmd: &Command, data: Option<&Dataset>, alpha: f64) -> Result<Outcome, CliError> {
    match cmd {
        Command::Describe { column } => describe(need_data(data)?, column),
        Command::Freq { column, bins } => freq(need_data(data)?, column, bins.as_deref()),
        Command::Crosstab { row, col } => crosstab(need_data(data)?, row, col, alpha),
        Command::Corr { a, b, spearman, tail: t } => corr(need_data(data)?, a, b, *spearman, tail(t)?, alpha),
        Command::Regress { y, x } => regress(need_data(data)?, y, x, alpha),
        Command::Dist { family, args } => dist(family, args),
        Command::Test(args) => test(need_data(data)?, args, alpha),
        Command::Likert {
            columns,
            reversed,
            levels,
            whole_total,
        } => likert_cmd(need_data(data)?, columns, reversed, *levels, *whole_total),
        Command::Sample(args) => sample(args),
        Command::Pca2 { a, b } => pca2(need_data(data)?, a, b),
        Command::DistMatrix { columns, metric } => dist_matrix(need_data(data)?, columns, metric),
    }
}

fn describe(data: &Dataset, name: &str) -> Result<Outcome, CliError> {
    let col = data.column(name)?;
    let s = col.sample()?;
    let mut res = serde_json::Map::new();
    let mut warnings = Vec::new();
    res.insert("n".into(), json!(s.n()));
    let freq = build_frequency(&s);
    let modes: Vec<Value> = mode(&freq)
        .into_iter()
        .map(|v| if s.scale() == ScaleLevel::Nominal { json!(s.label_of(v)) } else { json!(v) })
        .collect();
    res.insert("mode".into(), json!(modes));
    if s.scale() >= ScaleLevel::Ordinal {
        res.insert("median".into(), json!(median(&s)?));
        res.insert("five_number_summary".into(), to_value(&five_number_summary(&s)?));
        let qs: Vec<Value> = [0.1, 0.25, 0.5, 0.75, 0.9]
            .iter()
            .map(|a| Ok(json!({"alpha": a, "value": quantile(&s, *a)?})))
            .collect::<Result<_, CliError>>()?;
        res.insert("quantiles".into(), json!(qs));
    }
    if s.scale().is_metric() {
        res.insert("mean".into(), json!(arithmetic_mean(&s)?));
        match dispersion(&s) {
            Ok(d) => {
                res.insert("variance".into(), json!(d.variance));
                res.insert("dispersion".into(), to_value(&d));
            }
            Err(e) => warnings.push(format!("dispersion unavailable: {e}")),
        }
        match shape(&s) {
            Ok(sh) => {
                res.insert("shape".into(), to_value(&sh));
            }
            Err(e) => warnings.push(format!("shape measures unavailable: {e}")),
        }
        match sampling::point_estimates(&s) {
            Ok(p) => {
                res.insert("estimates".into(), to_value(&p));
            }
            Err(e) => warnings.push(format!("point estimates unavailable: {e}")),
        }
    }
    if s.scale() == ScaleLevel::MetricRatio {
        match lorenz_points(&s) {
            Ok(l) => {
                res.insert("lorenz".into(), to_value(&l.points));
                res.insert("gini".into(), json!(gini_normalized(&s)?));
            }
            Err(e) => warnings.push(format!("concentration measures unavailable: {e}")),
        }
    }
    Ok(outcome(data_inputs(data, &[name])?, Value::Object(res), warnings))
}

fn freq(data: &Dataset, name: &str, bins: Option<&[f64]>) -> Result<Outcome, CliError> {
    let s = data.column(name)?.sample()?;
    let results = match bins {
        Some(edges) => {
            s.require(ScaleLevel::MetricInterval)?;
            let b = build_binned(&s, edges)?;
            let ecdf: Vec<Value> = std::iter::once(b.lower())
                .chain(b.bins().iter().map(|bin| bin.upper))
                .map(|x| json!({"x": x, "f": b.cumulative(x)}))
                .collect();
            json!({"n": b.n(), "bins": b.bins(), "ecdf": ecdf})
        }
        None => {
            let f = build_frequency(&s);
            let nominal = s.scale() == ScaleLevel::Nominal;
            let mut cum = 0u64;
            let rows: Vec<Value> = f
                .entries()
                .iter()
                .map(|e| {
                    cum += e.count;
                    let mut row = json!({"count": e.count, "relative": e.relative});
                    if nominal {
                        row["label"] = json!(s.label_of(e.value));
                    } else {
                        row["value"] = json!(e.value);
                        row["cumulative"] = json!(cum as f64 / f.n() as f64);
                    }
                    row
                })
                .collect();
            let mut out = json!({"n": f.n(), "table": rows});
            if !nominal {
                let ecdf: Vec<Value> =
                    f.entries().iter().map(|e| json!({"x": e.value, "f": f.cumulative(e.value)})).collect();
                out["ecdf"] = json!(ecdf);
            }
            out
        }
    };
    Ok(outcome(data_inputs(data, &[name])?, results, Vec::new()))
}

fn crosstab(data: &Dataset, row: &str, col: &str, alpha: f64) -> Result<Outcome, CliError> {
    let a = data.column(row)?.sample()?;
    let b = data.column(col)?.sample()?;
    let t = contingency_from_pairs(&a, &b)?;
    let mut warnings = Vec::new();
    if !t.expected_counts_adequate() {
        warnings.push("an expected count is below 5".to_string());
    }
    let v = cramers_v(&t).ok();
    let test = inf::chi2_table_test(&t, TableTestMode::Independence, alpha).ok();
    let results = json!({
        "row_labels": t.row_labels(),
        "col_labels": t.col_labels(),
        "counts": t.counts(),
        "row_totals": t.row_totals(),
        "col_totals": t.col_totals(),
        "n": t.n(),
        "expected": t.expected(),
        "row_given_col": conditional_dist(&t, Conditioning::RowGivenCol).ok(),
        "col_given_row": conditional_dist(&t, Conditioning::ColGivenRow).ok(),
        "chi2": chi2_descriptive(&t)?,
        "cramers_v": v,
        "strength": v.map(association_strength),
        "independence_test": test.map(|t| t.test),
    });
    Ok(outcome(data_inputs(data, &[row, col])?, results, warnings))
}

fn corr(data: &Dataset, a: &str, b: &str, spearman: bool, t: TailKind, alpha: f64) -> Result<Outcome, CliError> {
    let sa = data.column(a)?.sample()?;
    let sb = data.column(b)?.sample()?;
    let results = if spearman {
        let rs = spearman_rs(&sa, &sb)?;
        let test = inf::spearman_t_test(sa.values(), sb.values(), t, alpha);
        json!({
            "method": "spearman",
            "r": rs,
            "strength": correlation_strength(rs),
            "test": test.map_err(|e| e.to_string()).map_or_else(|e| json!({"absent": e}), |t| to_value(&t)),
        })
    } else {
        sa.require(ScaleLevel::MetricInterval)?;
        sb.require(ScaleLevel::MetricInterval)?;
        let r = pearson_r(sa.values(), sb.values())?;
        let test = inf::correlation_t_test(sa.values(), sb.values(), t, alpha);
        json!({
            "method": "pearson",
            "r": r,
            "strength": correlation_strength(r),
            "test": test.map_err(|e| e.to_string()).map_or_else(|e| json!({"absent": e}), |t| to_value(&t)),
        })
    };
    Ok(outcome(data_inputs(data, &[a, b])?, results, Vec::new()))
}

fn metric_pair<'a>(data: &'a Dataset, a: &str, b: &str) -> Result<(&'a [f64], &'a [f64]), CliError> {
    for name in [a, b] {
        data.column(name)?.sample()?.require(ScaleLevel::MetricInterval)?;
    }
    Ok((data.numbers(a)?, data.numbers(b)?))
}

fn regress(data: &Dataset, y: &str, x: &str, alpha: f64) -> Result<Outcome, CliError> {
    let (ys, xs) = metric_pair(data, y, x)?;
    let inference = inf::regression_inference(xs, ys, alpha)?;
    let mut warnings = inference.notes.clone();
    let diagnostics = match inf::residual_diagnostics(&inference.fit, alpha) {
        Ok(d) => {
            warnings.extend(d.notes.iter().cloned());
            Some(d)
        }
        Err(e) => {
            warnings.push(format!("residual diagnostics unavailable: {e}"));
            None
        }
    };
    let results = json!({"inference": inference, "diagnostics": diagnostics});
    Ok(outcome(data_inputs(data, &[y, x])?, results, warnings))
}

fn need_params(family: &str, p: &[f64], k: usize) -> Result<(), CliError> {
    if p.len() != k {
        return Err(usage(format!("{family} takes {k} parameter(s), got {}", p.len())));
    }
    Ok(())
}

fn count(v: f64) -> Result<u64, CliError> {
    if v >= 0.0 && v.fract() == 0.0 && v < u64::MAX as f64 {
        Ok(v as u64)
    } else {
        Err(usage(format!("expected a non-negative integer, got {v}")))
    }
}

/// Builds a law from its family name and positional parameters.
pub fn parse_distribution(family: &str, p: &[f64]) -> Result<Distribution, CliError> {
    let d = match family {
        "discrete-uniform" | "discrete_uniform" => Distribution::discrete_uniform(p.to_vec())?,
        "bernoulli" => {
            need_params(family, p, 1)?;
            Distribution::bernoulli(p[0])?
        }
        "binomial" => {
            need_params(family, p, 2)?;
            Distribution::binomial(count(p[0])?, p[1])?
        }
        "hypergeometric" => {
            need_params(family, p, 3)?;
            Distribution::hypergeometric(count(p[0])?, count(p[1])?, count(p[2])?)?
        }
        "uniform" => {
            need_params(family, p, 2)?;
            Distribution::uniform(p[0], p[1])?
        }
        "normal" => {
            need_params(family, p, 2)?;
            Distribution::normal(p[0], p[1])?
        }
        "chi2" | "chi-square" => {
            need_params(family, p, 1)?;
            Distribution::chi_square(p[0])?
        }
        "t" => {
            need_params(family, p, 1)?;
            Distribution::student_t(p[0])?
        }
        "f" => {
            need_params(family, p, 2)?;
            Distribution::fisher_f(p[0], p[1])?
        }
        "pareto" => {
            need_params(family, p, 2)?;
            Distribution::pareto(p[0], p[1])?
        }
        "exponential" => {
            need_params(family, p, 1)?;
            Distribution::exponential(p[0])?
        }
        "logistic" => {
            need_params(family, p, 2)?;
            Distribution::logistic(p[0], p[1])?
        }
        "shyp" | "special-hyperbolic" => {
            need_params(family, p, 0)?;
            Distribution::special_hyperbolic()
        }
        "cauchy" => {
            need_params(family, p, 2)?;
            Distribution::cauchy(p[0], p[1])?
        }
        other => return Err(usage(format!("unknown distribution family '{other}'"))),
    };
    Ok(d)
}

fn numbers(args: &[String]) -> Result<Vec<f64>, CliError> {
    args.iter()
        .map(|a| a.parse::<f64>().map_err(|_| usage(format!("expected a number, got '{a}'"))))
        .collect()
}

fn parse_dist_spec(spec: &str) -> Result<Distribution, CliError> {
    let mut parts = spec.split_whitespace();
    let family = parts.next().ok_or_else(|| usage("empty distribution"))?;
    let params = numbers(&parts.map(str::to_string).collect::<Vec<_>>())?;
    parse_distribution(family, &params)
}

const OPS: [&str; 5] = ["pdf", "pmf", "cdf", "quantile", "moments"];

fn dist(family: &str, args: &[String]) -> Result<Outcome, CliError> {
    let at = args
        .iter()
        .position(|a| OPS.contains(&a.as_str()))
        .ok_or_else(|| usage("missing operation: pdf, cdf, quantile or moments"))?;
    let params = numbers(&args[..at])?;
    let op = args[at].as_str();
    let points = numbers(&args[at + 1..])?;
    let d = parse_distribution(family, &params)?;
    let inputs = json!({"family": family, "params": params, "op": op, "points": points});
    let results = if op == "moments" {
        json!({"distribution": d, "label": d.label(), "moments": d.moments()})
    } else {
        if points.is_empty() {
            return Err(usage(format!("{op} needs at least one point")));
        }
        let values: Vec<Value> = points
            .iter()
            .map(|&x| {
                let v = match op {
                    "quantile" => d.quantile(x)?,
                    "cdf" => d.cdf(x),
                    _ => d.density(x),
                };
                Ok(json!({"x": x, "value": v}))
            })
            .collect::<Result<_, CliError>>()?;
        json!({"distribution": d, "label": d.label(), "op": op, "values": values})
    };
    Ok(outcome(inputs, results, Vec::new()))
}

fn arg<'a>(v: &'a Option<String>, flag: &str, test: &str) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| usage(format!("test {test} needs --{flag}")))
}

/// Two samples either from --col/--col2 or from --col split by --by.
fn two_samples(data: &Dataset, a: &TestArgs) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let col = arg(&a.col, "col", &a.name)?;
    if let Some(by) = &a.by {
        let (names, mut groups) = data.groups(col, by)?;
        if groups.len() != 2 {
            return Err(CliError::Data(format!("--by {by} defines {} groups, need 2", names.len())));
        }
        let g2 = groups.pop().unwrap_or_default();
        let g1 = groups.pop().unwrap_or_default();
        return Ok((g1, g2));
    }
    let col2 = arg(&a.col2, "col2", &a.name)?;
    Ok((data.numbers(col)?.to_vec(), data.numbers(col2)?.to_vec()))
}

fn grouped(data: &Dataset, a: &TestArgs) -> Result<Vec<Vec<f64>>, CliError> {
    let col = arg(&a.col, "col", &a.name)?;
    let by = arg(&a.by, "by", &a.name)?;
    Ok(data.groups(col, by)?.1)
}

fn metric_col<'a>(data: &'a Dataset, name: &str) -> Result<&'a [f64], CliError> {
    data.column(name)?.sample()?.require(ScaleLevel::MetricInterval)?;
    data.numbers(name)
}

fn test(data: &Dataset, a: &TestArgs, alpha: f64) -> Result<Outcome, CliError> {
    let tk = tail(&a.tail)?;
    let level = a.level.unwrap_or(1.0 - alpha);
    let mut used: Vec<&str> = [&a.col, &a.col2, &a.by].iter().filter_map(|c| c.as_deref()).collect();
    used.dedup();
    let results = match a.name.as_str() {
        "t1" => to_value(&inf::t_test_one_sample(metric_col(data, arg(&a.col, "col", "t1")?)?, a.mu0, tk, alpha)?),
        "chi2-var" => {
            let s2 = a.sigma2.ok_or_else(|| usage("test chi2-var needs --sigma2"))?;
            to_value(&inf::chi2_variance_test(metric_col(data, arg(&a.col, "col", "chi2-var")?)?, s2, tk, alpha)?)
        }
        "t2" | "welch" => {
            let (x1, x2) = two_samples(data, a)?;
            to_value(&inf::t_test_two_independent(&x1, &x2, a.name == "t2", tk, alpha)?)
        }
        "f" => {
            let (x1, x2) = two_samples(data, a)?;
            to_value(&inf::f_test_two_variances(&x1, &x2, tk, alpha)?)
        }
        "paired" => {
            let x1 = metric_col(data, arg(&a.col, "col", "paired")?)?;
            let x2 = metric_col(data, arg(&a.col2, "col2", "paired")?)?;
            to_value(&inf::t_test_paired(x1, x2, tk, alpha)?)
        }
        "wilcoxon" => {
            let x1 = data.numbers(arg(&a.col, "col", "wilcoxon")?)?;
            let x2 = data.numbers(arg(&a.col2, "col2", "wilcoxon")?)?;
            to_value(&inf::wilcoxon_signed_rank(x1, x2, tk, alpha)?)
        }
        "mwu" => {
            let (x1, x2) = two_samples(data, a)?;
            to_value(&inf::mann_whitney_u(&x1, &x2, tk, alpha)?)
        }
        "gof" => {
            let s = data.column(arg(&a.col, "col", "gof")?)?.sample()?;
            let f = build_frequency(&s);
            let observed: Vec<u64> = f.entries().iter().map(|e| e.count).collect();
            let probs = match &a.probs {
                Some(p) => p.clone(),
                None => vec![1.0 / observed.len() as f64; observed.len()],
            };
            let categories: Vec<String> = f.entries().iter().map(|e| s.label_of(e.value)).collect();
            json!({
                "categories": categories,
                "observed": observed,
                "test": inf::chi2_gof(&observed, &probs, a.estimated, alpha)?,
            })
        }
        "homogeneity" | "independence" => {
            let r = data.column(arg(&a.col, "col", &a.name)?)?.sample()?;
            let c = data.column(arg(&a.col2, "col2", &a.name)?)?.sample()?;
            let t = contingency_from_pairs(&r, &c)?;
            let mode = if a.name == "homogeneity" { TableTestMode::Homogeneity } else { TableTestMode::Independence };
            to_value(&inf::chi2_table_test(&t, mode, alpha)?)
        }
        "anova" => to_value(&inf::anova_oneway(&grouped(data, a)?, alpha)?),
        "posthoc" => to_value(&inf::anova_posthoc_bonferroni(&grouped(data, a)?, alpha)?),
        "levene" => to_value(&inf::levene_test(&grouped(data, a)?, alpha)?),
        "kw" => to_value(&inf::kruskal_wallis(&grouped(data, a)?, alpha)?),
        "ks" => to_value(&inf::ks_test_normal(metric_col(data, arg(&a.col, "col", "ks")?)?, alpha)?),
        "corr" => {
            let x = metric_col(data, arg(&a.col, "col", "corr")?)?;
            let y = metric_col(data, arg(&a.col2, "col2", "corr")?)?;
            to_value(&inf::correlation_t_test(x, y, tk, alpha)?)
        }
        "spearman" => {
            let x = data.column(arg(&a.col, "col", "spearman")?)?.sample()?;
            let y = data.column(arg(&a.col2, "col2", "spearman")?)?.sample()?;
            x.require(ScaleLevel::Ordinal)?;
            y.require(ScaleLevel::Ordinal)?;
            to_value(&inf::spearman_t_test(x.values(), y.values(), tk, alpha)?)
        }
        "ci-mean" => to_value(&inf::ci_mean(metric_col(data, arg(&a.col, "col", "ci-mean")?)?, level)?),
        "ci-var" => to_value(&inf::ci_variance(metric_col(data, arg(&a.col, "col", "ci-var")?)?, level)?),
        other => return Err(usage(format!("unknown test '{other}'"))),
    };
    let mut inputs = data_inputs(data, &used)?;
    inputs["test"] = json!(a.name);
    inputs["tail"] = json!(tk);
    inputs["alpha"] = json!(alpha);
    Ok(outcome(inputs, results, Vec::new()))
}

fn likert_cmd(data: &Dataset, columns: &[String], reversed: &[String], levels: u32, whole: bool) -> Result<Outcome, CliError> {
    for r in reversed {
        if !columns.contains(r) {
            return Err(usage(format!("reversed item '{r}' is not among the items")));
        }
    }
    let mut cols = Vec::with_capacity(columns.len());
    for name in columns {
        let v = data.numbers(name)?;
        let ints: Vec<u32> = v
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if x.fract() == 0.0 && *x >= 0.0 && *x <= u32::MAX as f64 {
                    Ok(*x as u32)
                } else {
                    Err(CliError::Data(format!("column '{name}' row {}: rating {x} is not an integer", i + 1)))
                }
            })
            .collect::<Result<_, _>>()?;
        cols.push(ints);
    }
    let rows: Vec<Vec<u32>> = (0..data.n()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let polarity = columns
        .iter()
        .map(|c| if reversed.contains(c) { Polarity::Reversed } else { Polarity::Normal })
        .collect();
    let items = ItemMatrix::new(rows, polarity, levels)?;
    let mut warnings = Vec::new();
    let alpha: Measure = likert::cronbach_alpha(&items).into();
    if let Some(a) = alpha.value() {
        if a < 0.0 {
            warnings.push(format!("negative alpha {a}: check item polarity"));
        }
    }
    let mode = if whole { TotalMode::WholeTotal } else { TotalMode::RestTotal };
    let correlations = if items.m() >= 2 { Some(likert::item_total_correlations(&items, mode)?) } else { None };
    let analysis = if items.m() >= 3 {
        let a = likert::item_analysis(&items)?;
        warnings.extend(a.notes.iter().cloned());
        Some(a)
    } else {
        warnings.push("item analysis needs at least three items".to_string());
        None
    };
    let results = json!({
        "items": columns,
        "total_scores": likert::total_score(&items),
        "cronbach_alpha": alpha,
        "item_total": correlations,
        "item_analysis": analysis,
    });
    let used: Vec<&str> = columns.iter().map(String::as_str).collect();
    Ok(outcome(data_inputs(data, &used)?, results, warnings))
}

fn need<T: Copy>(v: Option<T>, flag: &str, method: &str) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("sample {method} needs --{flag}")))
}

fn sample(a: &SampleArgs) -> Result<Outcome, CliError> {
    let m = a.method.as_str();
    let seed = || need(a.seed, "seed", m);
    let (results, used_seed) = match m {
        "srs" => {
            let s = seed()?;
            let units: Vec<usize> = sampling::simple_random_indices(need(a.population, "population", m)?, need(a.n, "n", m)?, s)?
                .into_iter()
                .map(|i| i + 1)
                .collect();
            (json!({"units": units}), Some(s))
        }
        "inclusion" => (
            to_value(&sampling::inclusion_probabilities(need(a.population, "population", m)?, need(a.n, "n", m)?)?),
            None,
        ),
        "stratified" => {
            let strata = a.strata.as_ref().ok_or_else(|| usage("sample stratified needs --strata"))?;
            let n = need(a.n, "n", m)? as u64;
            (json!({"strata": strata, "allocation": sampling::stratified_allocation(strata, n)?}), None)
        }
        "cluster" => {
            let s = seed()?;
            let (k_total, k) = (need(a.clusters, "clusters", m)?, need(a.k, "k", m)?);
            let chosen: Vec<usize> = sampling::cluster_sample(k_total, k, s)?.into_iter().map(|i| i + 1).collect();
            (
                json!({"clusters": chosen, "selection_probability": sampling::cluster_selection_probability(k_total, k)?}),
                Some(s),
            )
        }
        "draw" => {
            let s = seed()?;
            let d = parse_dist_spec(a.dist.as_deref().ok_or_else(|| usage("sample draw needs --dist"))?)?;
            (json!({"distribution": d, "values": d.random_sample(need(a.n, "n", m)?, s)?}), Some(s))
        }
        "simulate" => {
            let s = seed()?;
            let d = parse_dist_spec(a.dist.as_deref().ok_or_else(|| usage("sample simulate needs --dist"))?)?;
            let est = match a.estimator.as_str() {
                "mean" => Estimator::Mean,
                "variance" => Estimator::Variance,
                "skewness" => Estimator::Skewness,
                "kurtosis" => Estimator::Kurtosis,
                other => return Err(usage(format!("unknown estimator '{other}'"))),
            };
            let sim = sampling::sampling_distribution_sim(&d, est, need(a.n, "n", m)?, a.reps, s)?;
            (json!({"distribution": d, "simulation": sim}), Some(s))
        }
        other => return Err(usage(format!("unknown sampling method '{other}'"))),
    };
    let inputs = json!({
        "method": m,
        "population": a.population,
        "n": a.n,
        "strata": a.strata,
        "clusters": a.clusters,
        "k": a.k,
        "dist": a.dist,
        "estimator": a.estimator,
        "reps": a.reps,
    });
    Ok(Outcome {
        inputs,
        results,
        warnings: Vec::new(),
        seed: used_seed,
    })
}

fn pca2(data: &Dataset, a: &str, b: &str) -> Result<Outcome, CliError> {
    let (xa, xb) = metric_pair(data, a, b)?;
    let r = pearson_r(xa, xb)?;
    let p = pca_2x2(r)?;
    Ok(outcome(data_inputs(data, &[a, b])?, to_value(&p), Vec::new()))
}

fn dist_matrix(data: &Dataset, columns: &[String], metric: &str) -> Result<Outcome, CliError> {
    let metric: Metric = metric.parse().map_err(|_| usage(format!("unknown metric '{metric}'")))?;
    let mut cols = Vec::new();
    for c in columns {
        cols.push(metric_col(data, c)?);
    }
    let rows: Vec<Vec<f64>> = (0..data.n()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let d = proximity_matrix(&rows, metric)?;
    let used: Vec<&str> = columns.iter().map(String::as_str).collect();
    Ok(outcome(data_inputs(data, &used)?, json!({"metric": metric, "distances": d}), Vec::new()))
}

