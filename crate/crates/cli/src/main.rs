use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spinex_core::bench::{
    build_report, load_csv_dataset, load_dataset_dir, measure_complexity, pca_project_2d,
    rank_algorithms, run_benchmark, write_csv_dataset, write_pca_csv, AlgorithmSpec,
    ComplexityOptions, DetectionReport, MetricTable, RankMode,
};
use spinex_core::{
    explain, generate_scenario, scenario, DetectorConfig, Result, ScenarioSpec, SpinexError,
};

#[derive(Parser, Debug)]
#[command(name = "spinex", version, about = "Similarity-based anomaly detection and benchmarking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a labelled synthetic dataset as CSV.
    Generate(GenerateArgs),
    /// Score a CSV dataset and write a JSON report.
    Detect(DetectArgs),
    /// Print feature contributions for the rows flagged in a report.
    Explain(ExplainArgs),
    /// Run algorithms over a directory of labelled CSV datasets.
    Bench(BenchArgs),
    /// Aggregate a metric table into per-algorithm ranks.
    Rank(RankArgs),
    /// Time the scoring path over an (n, d) grid and fit exponents.
    Complexity(ComplexityArgs),
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["scenario", "spec"]))]
struct GenerateArgs {
    /// Catalog scenario number (1-21).
    #[arg(long)]
    scenario: Option<usize>,
    /// "mean_shift,cov_scale,outlier_fraction,num_features,complexity_level,size".
    #[arg(long)]
    spec: Option<String>,
    /// Defaults to the catalog seed for --scenario and 0 for --spec.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct DetectArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// standard, minmax or robust.
    #[arg(long)]
    scale: Option<String>,
    #[arg(long)]
    weights: bool,
    #[arg(long)]
    interactions: bool,
    /// Also add nonlinear interaction columns (implies --interactions).
    #[arg(long)]
    nonlinear: bool,
    /// euclidean, manhattan or minkowski:P.
    #[arg(long)]
    metric: Option<String>,
    /// fixed, statistical or adaptive_quantile.
    #[arg(long)]
    threshold_method: Option<String>,
    /// Percentile for the fixed threshold.
    #[arg(long)]
    tau: Option<f64>,
    /// k in mean + k * std for the statistical threshold.
    #[arg(long)]
    multiplier: Option<f64>,
    /// Trailing window for the adaptive threshold.
    #[arg(long)]
    window: Option<usize>,
    /// Quantile in (0, 1) for the adaptive threshold.
    #[arg(long)]
    quantile: Option<f64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    out: PathBuf,
    /// Also write a two-component PCA projection (pc1,pc2,label,flagged).
    #[arg(long)]
    pca_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExplainArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    report: PathBuf,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long)]
    datasets: PathBuf,
    /// Comma-separated, e.g. "spinex,spinex-weights,knn:5,hbos".
    #[arg(long, value_delimiter = ',', required = true)]
    algorithms: Vec<String>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args, Debug)]
struct RankArgs {
    #[arg(long)]
    metrics: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// avg-then-rank or rank-then-avg.
    #[arg(long, default_value = "avg-then-rank")]
    mode: String,
}

#[derive(Args, Debug)]
struct ComplexityArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    ns: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    ds: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "spinex")]
    algorithm: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_spec(text: &str, seed: u64) -> Result<ScenarioSpec> {
    let fields: Vec<&str> = text.split(',').map(str::trim).collect();
    if fields.len() != 6 {
        return Err(SpinexError::argument(format!(
            "--spec needs 6 comma-separated values, got {}",
            fields.len()
        )));
    }
    let real = |i: usize| {
        fields[i]
            .parse::<f64>()
            .map_err(|_| SpinexError::argument(format!("invalid number {:?} in --spec", fields[i])))
    };
    let count = |i: usize| {
        fields[i]
            .parse::<usize>()
            .map_err(|_| SpinexError::argument(format!("invalid count {:?} in --spec", fields[i])))
    };
    let level = count(4)?;
    let spec = ScenarioSpec {
        mean_shift: real(0)?,
        cov_scale: real(1)?,
        outlier_fraction: real(2)?,
        num_features: count(3)?,
        complexity_level: u8::try_from(level)
            .map_err(|_| SpinexError::argument(format!("complexity level {level} out of range")))?,
        size: count(5)?,
        seed,
    };
    spec.validate()?;
    Ok(spec)
}

fn generate(args: GenerateArgs) -> Result<()> {
    let spec = match (args.scenario, args.spec) {
        (Some(n), _) => {
            let mut spec = scenario(n)?;
            if let Some(seed) = args.seed {
                spec.seed = seed;
            }
            spec
        }
        (None, Some(text)) => parse_spec(&text, args.seed.unwrap_or(0))?,
        (None, None) => unreachable!("clap requires one source"),
    };
    let data = generate_scenario(&spec)?;
    write_csv_dataset(&args.out, &data.matrix, Some(&data.labels))
}

fn detector_config(args: &DetectArgs) -> Result<DetectorConfig> {
    let mut config = DetectorConfig {
        use_weights: args.weights,
        include_interactions: args.interactions || args.nonlinear,
        use_nonlinear: args.nonlinear,
        worker_count: args.workers,
        ..DetectorConfig::default()
    };
    if let Some(s) = &args.scale {
        config.scaling_method = Some(s.parse()?);
    }
    if let Some(m) = &args.metric {
        config.distance_metric = m.parse()?;
    }
    if let Some(t) = &args.threshold_method {
        config.threshold_method = t.parse()?;
    }
    if let Some(tau) = args.tau {
        config.anomaly_threshold = tau;
    }
    if let Some(k) = args.multiplier {
        config.multiplier = k;
    }
    if let Some(w) = args.window {
        config.window_size = w;
    }
    if let Some(q) = args.quantile {
        config.quantile = q;
    }
    config.validate()?;
    Ok(config)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| SpinexError::io(path, e))
}

fn detect(args: DetectArgs) -> Result<()> {
    let config = detector_config(&args)?;
    let (matrix, labels) = load_csv_dataset(&args.input, None)?;
    let report = build_report(&matrix, &config, labels)?;
    report.save(&args.out)?;
    if let Some(path) = &args.pca_out {
        let projection = pca_project_2d(&matrix)?;
        let mut w = create(path)?;
        write_pca_csv(&mut w, &projection, report.labels.as_deref(), &report.flagged)?;
        w.flush().map_err(|e| SpinexError::io(path, e))?;
    }
    println!(
        "{} rows scored, {} flagged above {}",
        report.scores.len(),
        report.flagged.len(),
        report.threshold
    );
    Ok(())
}

fn explain_report(args: ExplainArgs) -> Result<()> {
    let (matrix, _) = load_csv_dataset(&args.input, None)?;
    let report = DetectionReport::load(&args.report)?;
    if report.scores.len() != matrix.n_rows() {
        return Err(SpinexError::argument(format!(
            "report covers {} rows but {} has {}",
            report.scores.len(),
            args.input.display(),
            matrix.n_rows()
        )));
    }
    let explanations = explain(&matrix, &report.flagged)?;
    if explanations.is_empty() {
        println!("No anomalies flagged.");
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for e in &explanations {
        write!(out, "{e}").map_err(|e| SpinexError::io("<stdout>", e))?;
    }
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let datasets = load_dataset_dir(&args.datasets)?;
    if datasets.is_empty() {
        return Err(SpinexError::argument(format!(
            "no .csv datasets in {}",
            args.datasets.display()
        )));
    }
    let algorithms = args
        .algorithms
        .iter()
        .map(|a| a.parse::<AlgorithmSpec>())
        .collect::<Result<Vec<_>>>()?;
    let table = run_benchmark(&datasets, &algorithms, args.workers)?;
    table.save(&args.out)?;
    let failed = table.entries.values().filter(|e| !e.is_complete()).count();
    println!(
        "{} entries written to {} ({failed} incomplete)",
        table.len(),
        args.out.display()
    );
    Ok(())
}

fn rank(args: RankArgs) -> Result<()> {
    let mode: RankMode = args.mode.parse()?;
    let table = MetricTable::load(&args.metrics)?;
    let ranks = rank_algorithms(&table, mode)?;
    match &args.out {
        Some(path) => ranks.save(path),
        None => ranks.write_csv(std::io::stdout().lock()),
    }
}

fn complexity(args: ComplexityArgs) -> Result<()> {
    let algorithm: AlgorithmSpec = args.algorithm.parse()?;
    let options = ComplexityOptions {
        repeats: args.repeats,
        seed: args.seed,
        ..ComplexityOptions::default()
    };
    let grid = measure_complexity(&args.ns, &args.ds, &algorithm, &options)?;
    grid.save(&args.out)?;
    println!("{}", grid.summary());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Detect(a) => detect(a),
        Command::Explain(a) => explain_report(a),
        Command::Bench(a) => bench(a),
        Command::Rank(a) => rank(a),
        Command::Complexity(a) => complexity(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
