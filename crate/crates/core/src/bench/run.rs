use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baselines::{run_baseline, BaselineSpec};
use crate::bench::io::NamedDataset;
use crate::detector::{
    DetectionResult, Detector, DetectorConfig, DistanceMetric, ScalingMethod, ThresholdMethod,
};
use crate::error::{Result, SpinexError};
use crate::matrix::FeatureMatrix;
use crate::metrics::{auc_roc, confusion, precision_recall_f1};
use crate::parallel::map_indexed;

/// Percentile used to flag baseline scores, matching the detector default.
pub const BASELINE_TAU: f64 = 98.0;

#[derive(Debug, Clone, PartialEq)]
pub enum Algorithm {
    Spinex(DetectorConfig),
    Baseline(BaselineSpec),
}

/// A named algorithm variant.
///
/// Detector variants are written `spinex` followed by `-`-separated
/// modifiers: `weights`, `interactions`, `nonlinear`, `statistical`,
/// `adaptive`, `standard`, `minmax`, `robust`, `manhattan`. Baselines are
/// `knn[:K]` and `hbos[:BINS]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmSpec {
    pub name: String,
    pub algorithm: Algorithm,
}

impl FromStr for AlgorithmSpec {
    type Err = SpinexError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut parts = s.split('-');
        let algorithm = if parts.next() == Some("spinex") {
            let mut config = DetectorConfig::default();
            for modifier in parts {
                match modifier {
                    "weights" => config.use_weights = true,
                    "interactions" => config.include_interactions = true,
                    "nonlinear" => {
                        config.include_interactions = true;
                        config.use_nonlinear = true;
                    }
                    "statistical" => config.threshold_method = ThresholdMethod::Statistical,
                    "adaptive" => config.threshold_method = ThresholdMethod::AdaptiveQuantile,
                    "standard" => config.scaling_method = Some(ScalingMethod::Standard),
                    "minmax" => config.scaling_method = Some(ScalingMethod::MinMax),
                    "robust" => config.scaling_method = Some(ScalingMethod::Robust),
                    "manhattan" => config.distance_metric = DistanceMetric::Manhattan,
                    other => {
                        return Err(SpinexError::argument(format!(
                            "unknown modifier {other:?} in algorithm {s:?}"
                        )))
                    }
                }
            }
            Algorithm::Spinex(config)
        } else {
            Algorithm::Baseline(s.parse().map_err(|_| {
                SpinexError::argument(format!(
                    "unknown algorithm {s:?}; expected spinex[-modifier...], knn[:K] or hbos[:BINS]"
                ))
            })?)
        };
        Ok(AlgorithmSpec {
            name: s.to_owned(),
            algorithm,
        })
    }
}

impl AlgorithmSpec {
    pub fn named(name: impl Into<String>, algorithm: Algorithm) -> Self {
        Self {
            name: name.into(),
            algorithm,
        }
    }

    /// Scores only; this is the path the complexity harness times.
    pub fn scores(&self, m: &FeatureMatrix, workers: usize) -> Result<Vec<f64>> {
        match &self.algorithm {
            Algorithm::Spinex(config) => {
                let config = DetectorConfig {
                    worker_count: workers,
                    ..config.clone()
                };
                Detector::new(config)?.score(m)
            }
            Algorithm::Baseline(spec) => spec.scores(m, workers),
        }
    }

    pub fn detect(&self, m: &FeatureMatrix, workers: usize) -> Result<DetectionResult> {
        match &self.algorithm {
            Algorithm::Spinex(config) => {
                let config = DetectorConfig {
                    worker_count: workers,
                    ..config.clone()
                };
                Detector::new(config)?.detect(m)
            }
            Algorithm::Baseline(spec) => run_baseline(m, spec, BASELINE_TAU, workers),
        }
    }
}

impl fmt::Display for AlgorithmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

pub const STATUS_OK: &str = "ok";

/// Metrics for one (algorithm, dataset) cell. Missing values mean the
/// metric could not be computed; `status` says why.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricEntry {
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f1: Option<f64>,
    pub auc: Option<f64>,
    pub status: String,
}

impl MetricEntry {
    pub fn failed(reason: impl fmt::Display) -> Self {
        Self {
            precision: None,
            recall: None,
            f1: None,
            auc: None,
            status: format!("failed: {reason}"),
        }
    }

    pub fn values(&self) -> [Option<f64>; 4] {
        [self.precision, self.recall, self.f1, self.auc]
    }

    pub fn is_complete(&self) -> bool {
        self.values().iter().all(Option::is_some)
    }
}

/// Metric entries keyed by `(algorithm, dataset)`, iterated in key order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MetricTable {
    pub entries: BTreeMap<(String, String), MetricEntry>,
}

impl MetricTable {
    pub fn insert(&mut self, algorithm: &str, dataset: &str, entry: MetricEntry) -> Result<()> {
        let key = (algorithm.to_owned(), dataset.to_owned());
        if self.entries.contains_key(&key) {
            return Err(SpinexError::argument(format!(
                "duplicate entry for algorithm {algorithm:?} on dataset {dataset:?}"
            )));
        }
        self.entries.insert(key, entry);
        Ok(())
    }

    pub fn get(&self, algorithm: &str, dataset: &str) -> Option<&MetricEntry> {
        self.entries.get(&(algorithm.to_owned(), dataset.to_owned()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["algorithm", "dataset", "precision", "recall", "f1", "auc", "status"])?;
        let fmt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for ((alg, ds), e) in &self.entries {
            w.write_record([
                alg.clone(),
                ds.clone(),
                fmt(e.precision),
                fmt(e.recall),
                fmt(e.f1),
                fmt(e.auc),
                e.status.clone(),
            ])?;
        }
        w.flush().map_err(|e| SpinexError::io("<csv>", e))?;
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| SpinexError::io(path, e))?;
        self.write_csv(file)
    }

    pub fn read_csv<R: Read>(reader: R, path: &Path) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut table = MetricTable::default();
        for record in rdr.records() {
            let record = record?;
            let line = record.position().map_or(0, |p| p.line());
            let err = |message: String| SpinexError::Parse {
                path: path.to_path_buf(),
                line,
                message,
            };
            if record.len() != 7 {
                return Err(err(format!("expected 7 fields, found {}", record.len())));
            }
            let value = |i: usize| -> Result<Option<f64>> {
                let field = &record[i];
                if field.is_empty() {
                    return Ok(None);
                }
                field
                    .parse::<f64>()
                    .map(Some)
                    .map_err(|_| err(format!("non-numeric metric {field:?}")))
            };
            let entry = MetricEntry {
                precision: value(2)?,
                recall: value(3)?,
                f1: value(4)?,
                auc: value(5)?,
                status: record[6].to_owned(),
            };
            table
                .insert(&record[0], &record[1], entry)
                .map_err(|e| err(e.to_string()))?;
        }
        Ok(table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| SpinexError::io(path, e))?;
        Self::read_csv(file, path)
    }
}

/// Metrics of one detection against ground truth.
pub fn evaluate(labels: &[u8], result: &DetectionResult) -> Result<MetricEntry> {
    let counts = confusion(labels, &result.predictions)?;
    let (precision, recall, f1) = precision_recall_f1(&counts);
    let mut notes = Vec::new();
    if counts.precision_undefined() {
        notes.push("precision 0/0");
    }
    if counts.recall_undefined() {
        notes.push("recall 0/0");
    }
    let (auc, auc_note) = match auc_roc(labels, &result.scores) {
        Ok(a) => (Some(a), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let status = match auc_note {
        Some(reason) => format!("failed: {reason}"),
        None if notes.is_empty() => STATUS_OK.to_owned(),
        None => format!("{STATUS_OK}; {}", notes.join("; ")),
    };
    Ok(MetricEntry {
        precision: Some(precision),
        recall: Some(recall),
        f1: Some(f1),
        auc,
        status,
    })
}

/// Runs every algorithm on every dataset. Cells are independent and run on
/// up to `workers` threads; failures are recorded in the table.
pub fn run_benchmark(
    datasets: &[NamedDataset],
    algorithms: &[AlgorithmSpec],
    workers: usize,
) -> Result<MetricTable> {
    let cells: Vec<(usize, usize)> = (0..algorithms.len())
        .flat_map(|a| (0..datasets.len()).map(move |d| (a, d)))
        .collect();
    let entries = map_indexed(cells.len(), workers, |c| {
        let (a, d) = cells[c];
        let dataset = &datasets[d];
        let entry = match &dataset.labels {
            None => MetricEntry {
                status: "skipped: dataset has no labels".into(),
                ..MetricEntry::failed("")
            },
            Some(labels) => match algorithms[a].detect(&dataset.matrix, 1) {
                Ok(result) => evaluate(labels, &result).unwrap_or_else(MetricEntry::failed),
                Err(e) => MetricEntry::failed(e),
            },
        };
        (a, d, entry)
    })?;
    let mut table = MetricTable::default();
    for (a, d, entry) in entries {
        table.insert(&algorithms[a].name, &datasets[d].name, entry)?;
    }
    Ok(table)
}
