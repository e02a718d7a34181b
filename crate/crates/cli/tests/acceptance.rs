//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits nonzero if any criterion fails. Every tolerance and time limit is
//! a constant below.

#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use oracle::{Metric, OracleConfig, Scale};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinex_core::bench::{
    measure_complexity, rank_algorithms, AlgorithmSpec, ComplexityOptions, MetricEntry,
    MetricTable, RankMode,
};
use spinex_core::detector::{
    adaptive_quantile_threshold, compute_scores, fixed_threshold, prepare_working_matrix,
    statistical_threshold,
};
use spinex_core::{
    auc_roc, confusion, detect, explain, generate_scenario, precision_recall_f1, scenario,
    DetectorConfig, FeatureMatrix, ScalingMethod, ScenarioSpec, ThresholdMethod,
};

const ORACLE_TOL: f64 = 1e-9;
const THRESHOLD_TOL: f64 = 1e-12;
const AUC_TOL: f64 = 1e-12;
const RECALL_SEEDS_REQUIRED: usize = 90;
const MEAN_AUC_REQUIRED: f64 = 0.95;

type Outcome = Result<String, String>;

struct Criterion {
    number: u8,
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_rows(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..d).map(|_| rng.random_range(-5.0..5.0)).collect())
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let scales = [None, Some(Scale::Standard), Some(Scale::MinMax), Some(Scale::Robust)];
    let mut worst = 0.0f64;
    for case in 0..200usize {
        let n = rng.random_range(3..=50);
        let d = rng.random_range(1..=8);
        let rows = random_rows(&mut rng, n, d);
        // cycle through all 24 combinations of scaling x weights x interaction mode
        let combo = case % 24;
        let interactions = combo % 3;
        let cfg = OracleConfig {
            scale: scales[(combo / 6) % 4],
            interactions: interactions > 0,
            nonlinear: interactions == 2,
            weights: (combo / 3) % 2 == 1,
            metric: Metric::Euclidean,
        };
        let config = DetectorConfig {
            use_weights: cfg.weights,
            include_interactions: cfg.interactions,
            use_nonlinear: cfg.nonlinear,
            scaling_method: cfg.scale.map(|s| match s {
                Scale::Standard => ScalingMethod::Standard,
                Scale::MinMax => ScalingMethod::MinMax,
                Scale::Robust => ScalingMethod::Robust,
            }),
            ..DetectorConfig::default()
        };
        let m = FeatureMatrix::new(rows.clone(), None).map_err(|e| e.to_string())?;
        let work = prepare_working_matrix(&m, &config).map_err(|e| e.to_string())?;
        let got = compute_scores(&work.matrix, work.weights.as_ref(), config.distance_metric, 1)
            .map_err(|e| e.to_string())?;
        let want = oracle::scores(&rows, &cfg);
        for (g, w) in got.iter().zip(&want) {
            let err = (g - w).abs();
            worst = worst.max(err);
            check(err <= ORACLE_TOL, || format!("case {case} ({cfg:?}): {g} vs {w}"))?;
        }
    }
    Ok(format!("200 matrices, max abs error {worst:.2e}"))
}

fn threshold_contract() -> Outcome {
    let ramp: Vec<f64> = (0..100).map(f64::from).collect();
    let fixed = fixed_threshold(&ramp, 98.0).map_err(|e| e.to_string())?;
    check((fixed - 97.02).abs() <= THRESHOLD_TOL, || format!("fixed: {fixed}"))?;

    let stat = statistical_threshold(&[8.0, 12.0], 2.0).map_err(|e| e.to_string())?;
    let want = 10.0 + 4.0 * 2f64.sqrt();
    check((stat - want).abs() <= THRESHOLD_TOL, || format!("statistical: {stat} vs {want}"))?;

    let one_to_hundred: Vec<f64> = (1..=100).map(f64::from).collect();
    let adaptive = adaptive_quantile_threshold(&one_to_hundred, 50, 0.95).map_err(|e| e.to_string())?;
    check((adaptive - 97.55).abs() <= THRESHOLD_TOL, || format!("adaptive: {adaptive}"))?;

    let nan = fixed_threshold(&[f64::NAN, f64::NAN], 98.0);
    check(
        matches!(&nan, Err(e) if e.to_string() == "Scores array contains only NaN values."),
        || format!("all-NaN: {nan:?}"),
    )?;
    let empty = fixed_threshold(&[], 98.0);
    check(empty.is_err(), || format!("empty: {empty:?}"))?;
    Ok(format!("fixed {fixed}, statistical {stat:.12}, adaptive {adaptive}"))
}

fn planted_recovery() -> Outcome {
    let base = scenario(1).map_err(|e| e.to_string())?;
    let mut full_recall = 0;
    let mut ranked_first = 0;
    let mut max_flagged = 0;
    let mut auc_sum = 0.0;
    for seed in 0..100u64 {
        let data = generate_scenario(&ScenarioSpec { seed, ..base.clone() }).map_err(|e| e.to_string())?;
        let r = detect(&data.matrix, &DetectorConfig::default()).map_err(|e| e.to_string())?;
        let planted: BTreeSet<usize> = (0..data.labels.len()).filter(|&i| data.labels[i] == 1).collect();
        let flagged: BTreeSet<usize> = r.flagged.iter().copied().collect();
        if planted.is_subset(&flagged) {
            full_recall += 1;
        }
        let mut order: Vec<usize> = (0..r.scores.len()).collect();
        order.sort_by(|&a, &b| r.scores[b].total_cmp(&r.scores[a]));
        if order[..planted.len()].iter().all(|i| planted.contains(i)) {
            ranked_first += 1;
        }
        max_flagged = max_flagged.max(flagged.len());
        auc_sum += auc_roc(&data.labels, &r.scores).map_err(|e| e.to_string())?;
    }
    let mean_auc = auc_sum / 100.0;
    let detail = format!(
        "recall 1.0 in {full_recall}/100 seeds (need {RECALL_SEEDS_REQUIRED}); at most {max_flagged} rows flagged per seed; \
         planted rows ranked top-3 in {ranked_first}/100; mean AUC {mean_auc:.4} (need {MEAN_AUC_REQUIRED})"
    );
    if full_recall >= RECALL_SEEDS_REQUIRED && mean_auc >= MEAN_AUC_REQUIRED {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn interaction_arithmetic() -> Outcome {
    for d in 1..=12usize {
        let rows: Vec<Vec<f64>> = (0..4).map(|i| (0..d).map(|j| (i * d + j) as f64).collect()).collect();
        let m = FeatureMatrix::new(rows, None).map_err(|e| e.to_string())?;
        for (nonlinear, want) in [(false, d + d * (d - 1) / 2), (true, d + d * (d - 1))] {
            let config = DetectorConfig {
                include_interactions: true,
                use_nonlinear: nonlinear,
                ..DetectorConfig::default()
            };
            let got = prepare_working_matrix(&m, &config).map_err(|e| e.to_string())?.matrix.n_cols();
            check(got == want, || format!("d={d} nonlinear={nonlinear}: {got} columns, want {want}"))?;
        }
    }
    Ok("d = 1..12, linear and nonlinear".into())
}

fn metric_fidelity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..50 {
        let n = rng.random_range(1..200);
        let labels: Vec<u8> = (0..n).map(|_| rng.random_range(0..2)).collect();
        let preds: Vec<i8> = (0..n).map(|_| if rng.random_bool(0.3) { -1 } else { 1 }).collect();
        let (mut tp, mut fp, mut tn, mut fn_) = (0u64, 0u64, 0u64, 0u64);
        for (&l, &p) in labels.iter().zip(&preds) {
            match (l, p) {
                (1, -1) => tp += 1,
                (0, -1) => fp += 1,
                (0, 1) => tn += 1,
                _ => fn_ += 1,
            }
        }
        let c = confusion(&labels, &preds).map_err(|e| e.to_string())?;
        check((c.tp, c.fp, c.tn, c.fn_) == (tp, fp, tn, fn_), || format!("case {case}: counts {c:?}"))?;
        let div = |a: u64, b: u64| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let want = (div(tp, tp + fp), div(tp, tp + fn_), div(2 * tp, 2 * tp + fp + fn_));
        let got = precision_recall_f1(&c);
        check(got == want, || format!("case {case}: {got:?} vs {want:?}"))?;
    }
    let mut worst = 0.0f64;
    for case in 0..100 {
        let n = rng.random_range(2..300);
        let mut labels: Vec<u8> = (0..n).map(|_| rng.random_range(0..2)).collect();
        labels[0] = 0;
        labels[1] = 1;
        // coarse grid so that ties occur
        let scores: Vec<f64> = (0..n).map(|_| f64::from(rng.random_range(0..20)) * 0.25).collect();
        let got = auc_roc(&labels, &scores).map_err(|e| e.to_string())?;
        let want = oracle::pair_count_auc(&labels, &scores);
        worst = worst.max((got - want).abs());
        check((got - want).abs() <= AUC_TOL, || format!("auc case {case}: {got} vs {want}"))?;
    }
    Ok(format!("50 confusion matrices exact, 100 AUC vectors max error {worst:.1e}"))
}

fn rank_pipeline() -> Outcome {
    // constant per-algorithm values keep every average exact
    let values = [
        ("alpha", [0.9, 0.5, 0.6, 0.95]),
        ("beta", [0.8, 0.5, 0.7, 0.90]),
        ("gamma", [0.7, 0.9, 0.5, 0.85]),
    ];
    let mut table = MetricTable::default();
    for (name, v) in values {
        for ds in ["d1", "d2", "d3", "d4"] {
            let entry = MetricEntry {
                precision: Some(v[0]),
                recall: Some(v[1]),
                f1: Some(v[2]),
                auc: Some(v[3]),
                status: "ok".into(),
            };
            table.insert(name, ds, entry).map_err(|e| e.to_string())?;
        }
    }
    let expected = [
        ("alpha", [1.0, 2.5, 2.0, 1.0], 6.5, 1),
        ("beta", [2.0, 2.5, 1.0, 2.0], 7.5, 2),
        ("gamma", [3.0, 1.0, 3.0, 3.0], 10.0, 3),
    ];
    let ranks = rank_algorithms(&table, RankMode::AverageThenRank).map_err(|e| e.to_string())?;
    for (name, r, sum, overall) in expected {
        let row = ranks.row(name).ok_or_else(|| format!("{name} missing"))?;
        check(row.ranks == r && row.rank_sum == sum && row.overall == overall, || {
            format!("{name}: {:?} sum {} overall {}", row.ranks, row.rank_sum, row.overall)
        })?;
    }
    for k in 0..4 {
        let total: f64 = ranks.rows.iter().map(|r| r.ranks[k]).sum();
        check(total == 6.0, || format!("metric {k} ranks sum to {total}"))?;
    }
    Ok("hand table reproduced, recall tie at 2.5, per-metric sums 6".into())
}

fn run_cli(dir: &Path, args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_spinex"))
        .current_dir(dir)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    check(out.status.success(), || {
        format!("spinex {} failed: {}", args.join(" "), String::from_utf8_lossy(&out.stderr))
    })
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dir = tmp.path();
    let read = |name: &str| fs::read(dir.join(name)).map_err(|e| e.to_string());
    run_cli(dir, &["generate", "--scenario", "4", "--seed", "7", "--out", "a.csv"])?;
    run_cli(dir, &["generate", "--scenario", "4", "--seed", "7", "--out", "b.csv"])?;
    check(read("a.csv")? == read("b.csv")?, || "generate outputs differ".into())?;
    let mut reports = Vec::new();
    for workers in ["1", "2", "8"] {
        let out = format!("r{workers}.json");
        run_cli(
            dir,
            &["detect", "--in", "a.csv", "--weights", "--interactions", "--workers", workers, "--out", &out],
        )?;
        reports.push(read(&out)?);
    }
    check(reports.windows(2).all(|w| w[0] == w[1]), || "detect reports differ across workers".into())?;
    Ok(format!("CSV {} bytes, report {} bytes, identical", read("a.csv")?.len(), reports[0].len()))
}

fn scale_invariance() -> Outcome {
    let data = generate_scenario(&ScenarioSpec {
        mean_shift: 4.0,
        cov_scale: 1.0,
        outlier_fraction: 0.05,
        num_features: 5,
        complexity_level: 0,
        size: 100,
        seed: 3,
    })
    .map_err(|e| e.to_string())?;
    let mut summary = Vec::new();
    for method in [ThresholdMethod::Fixed, ThresholdMethod::Statistical, ThresholdMethod::AdaptiveQuantile] {
        let config = DetectorConfig {
            threshold_method: method,
            ..DetectorConfig::default()
        };
        let base = detect(&data.matrix, &config).map_err(|e| e.to_string())?.flagged;
        for c in [0.1, 10.0, 1000.0] {
            let scaled = data.matrix.map(|v| v * c).map_err(|e| e.to_string())?;
            let flagged = detect(&scaled, &config).map_err(|e| e.to_string())?.flagged;
            check(flagged == base, || format!("{method:?} c={c}: {flagged:?} vs {base:?}"))?;
        }
        summary.push(format!("{method:?} {}", base.len()));
    }
    Ok(format!("flag counts {}", summary.join(", ")))
}

fn explainability_shape() -> Outcome {
    // 64 rows of small integers, so every column mean is exact
    let mut rows: Vec<Vec<f64>> = (0..64)
        .map(|i| vec![f64::from(i % 4), f64::from(i % 3), f64::from(i % 5), f64::from(i % 2)])
        .collect();
    let planted = 37;
    rows[planted][2] = 400.0;
    let m = FeatureMatrix::new(rows.clone(), None).map_err(|e| e.to_string())?;
    let r = detect(&m, &DetectorConfig::default()).map_err(|e| e.to_string())?;
    check(r.flagged.contains(&planted), || format!("planted row not flagged: {:?}", r.flagged))?;
    let explanations = explain(&m, &[planted]).map_err(|e| e.to_string())?;
    let e = &explanations[0];
    check(e.entries[0].feature == "Feature3", || format!("top feature {}", e.entries[0].feature))?;
    for c in &e.entries {
        let j: usize = c.feature["Feature".len()..].parse::<usize>().map_err(|e| e.to_string())? - 1;
        let mean = rows.iter().map(|r| r[j]).sum::<f64>() / 64.0;
        let want = (rows[planted][j] - mean).abs();
        check(c.contribution == want && c.baseline == mean, || {
            format!("{}: {} vs {}", c.feature, c.contribution, want)
        })?;
    }
    let text = e.to_string();
    let mut lines = text.lines();
    check(lines.next() == Some("Anomaly at index 37:"), || text.clone())?;
    for line in lines {
        check(well_formed(line), || format!("bad line {line:?}"))?;
    }
    Ok(format!("top: {}", e.entries[0]))
}

/// `- FeatureN: X.XX (baseline: Y.YY, contribution: Z.ZZ)`
fn well_formed(line: &str) -> bool {
    let two_dp = |s: &str| {
        let s = s.strip_prefix('-').unwrap_or(s);
        matches!(s.split_once('.'), Some((a, b)) if !a.is_empty() && a.bytes().all(|c| c.is_ascii_digit()) && b.len() == 2 && b.bytes().all(|c| c.is_ascii_digit()))
    };
    let Some(rest) = line.strip_prefix("- Feature") else { return false };
    let Some((num, rest)) = rest.split_once(": ") else { return false };
    let Some((value, rest)) = rest.split_once(" (baseline: ") else { return false };
    let Some((baseline, rest)) = rest.split_once(", contribution: ") else { return false };
    let Some(contribution) = rest.strip_suffix(')') else { return false };
    num.parse::<usize>().is_ok() && two_dp(value) && two_dp(baseline) && two_dp(contribution)
}

fn complexity_report() -> Outcome {
    let algorithm: AlgorithmSpec = "spinex".parse().map_err(|e: spinex_core::SpinexError| e.to_string())?;
    let options = ComplexityOptions {
        repeats: 3,
        ..ComplexityOptions::default()
    };
    let grid = measure_complexity(&[100, 500, 2000], &[10, 50, 100], &algorithm, &options)
        .map_err(|e| e.to_string())?;
    check(grid.cells.len() == 9, || format!("{} cells", grid.cells.len()))?;
    for c in &grid.cells {
        check(c.seconds.is_some_and(|s| s >= 0.0), || format!("cell {}x{}: {}", c.n, c.d, c.status))?;
        println!("    n={:5} d={:4} {:.4}s", c.n, c.d, c.seconds.unwrap_or(f64::NAN));
    }
    let fit = grid.fit.as_ref().ok_or("no fit")?;
    check(fit.residuals.len() == 9, || "residual count".into())?;
    println!("    residuals {:?}", fit.residuals.iter().map(|r| format!("{r:.3}")).collect::<Vec<_>>());
    Ok(grid.summary())
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { number: 1, title: "oracle equivalence", limit: Duration::from_secs(30), run: oracle_equivalence },
        Criterion { number: 2, title: "threshold contract", limit: Duration::from_secs(1), run: threshold_contract },
        Criterion { number: 3, title: "planted-outlier recovery", limit: Duration::from_secs(60), run: planted_recovery },
        Criterion { number: 4, title: "interaction arithmetic", limit: Duration::from_secs(1), run: interaction_arithmetic },
        Criterion { number: 5, title: "metric fidelity", limit: Duration::from_secs(5), run: metric_fidelity },
        Criterion { number: 6, title: "rank pipeline", limit: Duration::from_secs(1), run: rank_pipeline },
        Criterion { number: 7, title: "determinism", limit: Duration::from_secs(10), run: determinism },
        Criterion { number: 8, title: "scale invariance", limit: Duration::from_secs(5), run: scale_invariance },
        Criterion { number: 9, title: "explainability shape", limit: Duration::from_secs(1), run: explainability_shape },
        Criterion { number: 10, title: "complexity report", limit: Duration::from_secs(300), run: complexity_report },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {:?}", c.limit))
            }
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failures += 1;
        }
        println!("[{tag}] criterion {}: {} ({detail}) [{elapsed:.2?}]", c.number, c.title);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
