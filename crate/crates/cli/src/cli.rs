use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "freqstat", version, about = "Descriptive and inferential statistics on CSV data")]
pub struct Cli {
    /// CSV file with a header row, or - for stdin
    #[arg(long, short = 'd', global = true)]
    pub data: Option<String>,
    /// Scale level of a column, e.g. income=ratio (nominal, ordinal, interval, ratio)
    #[arg(long = "scale", value_name = "COL=LEVEL", global = true)]
    pub scale: Vec<String>,
    /// Significance level
    #[arg(long, default_value_t = 0.05, global = true)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Location, dispersion, shape and concentration measures of one column
    Describe { column: String },
    /// Frequency table and empirical CDF points
    Freq {
        column: String,
        /// Class edges, comma separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        bins: Option<Vec<f64>>,
    },
    /// Contingency table with chi-square and Cramer's V
    Crosstab { row: String, col: String },
    /// Correlation coefficient and its t-test
    Corr {
        a: String,
        b: String,
        /// Rank correlation instead of Pearson's r
        #[arg(long)]
        spearman: bool,
        #[arg(long, default_value = "two-sided")]
        tail: String,
    },
    /// Simple linear regression of y on x
    Regress { y: String, x: String },
    /// Evaluate a distribution: dist <family> <params...> pdf|cdf|quantile|moments [points...]
    Dist {
        family: String,
        #[arg(allow_hyphen_values = true, num_args = 1..)]
        args: Vec<String>,
    },
    /// Run a named hypothesis test
    Test(TestArgs),
    /// Likert scale reliability and item analysis
    Likert {
        #[arg(required = true)]
        columns: Vec<String>,
        /// Items with reversed polarity, comma separated
        #[arg(long, value_delimiter = ',')]
        reversed: Vec<String>,
        #[arg(long, default_value_t = 5)]
        levels: u32,
        /// Correlate items with the whole total rather than the rest
        #[arg(long)]
        whole_total: bool,
    },
    /// Sampling designs and simulations
    Sample(SampleArgs),
    /// Principal components of the 2x2 correlation matrix of two columns
    Pca2 { a: String, b: String },
    /// Pairwise distances between rows
    DistMatrix {
        #[arg(required = true)]
        columns: Vec<String>,
        #[arg(long, default_value = "euclid")]
        metric: String,
    },
}

#[derive(Debug, Args)]
pub struct TestArgs {
    /// t1, chi2-var, t2, welch, f, paired, gof, homogeneity, independence,
    /// anova, posthoc, levene, mwu, wilcoxon, kw, ks, corr, spearman,
    /// ci-mean, ci-var
    pub name: String,
    #[arg(long)]
    pub col: Option<String>,
    #[arg(long)]
    pub col2: Option<String>,
    /// Grouping column
    #[arg(long)]
    pub by: Option<String>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub mu0: f64,
    #[arg(long)]
    pub sigma2: Option<f64>,
    #[arg(long, default_value = "two-sided")]
    pub tail: String,
    /// Hypothesised category probabilities, comma separated
    #[arg(long, value_delimiter = ',')]
    pub probs: Option<Vec<f64>>,
    /// Number of parameters estimated from the data
    #[arg(long, default_value_t = 0)]
    pub estimated: usize,
    /// Confidence level, defaults to 1 - alpha
    #[arg(long)]
    pub level: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// srs, inclusion, stratified, cluster, draw, simulate
    pub method: String,
    #[arg(long)]
    pub population: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Stratum sizes, comma separated
    #[arg(long, value_delimiter = ',')]
    pub strata: Option<Vec<u64>>,
    #[arg(long)]
    pub clusters: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Distribution, e.g. "normal 0 1"
    #[arg(long, allow_hyphen_values = true)]
    pub dist: Option<String>,
    /// mean, variance, skewness or kurtosis
    #[arg(long, default_value = "mean")]
    pub estimator: String,
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}
