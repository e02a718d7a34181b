//! Comparison detectors sharing the score-then-threshold contract of the
//! main detector: mean distance to the k nearest neighbours, and the
//! histogram-based outlier score.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::detector::distance::distance;
use crate::detector::{fixed_threshold, DetectionResult, DistanceMetric};
use crate::error::{Result, SpinexError};
use crate::matrix::FeatureMatrix;
use crate::parallel::map_indexed;

pub const DEFAULT_K: usize = 5;

/// Added to every bin height inside the logarithm.
pub const HEIGHT_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BinCount {
    /// `max(1, round(sqrt(n)))`
    Auto,
    Fixed(usize),
}

impl BinCount {
    pub fn resolve(self, n_rows: usize) -> usize {
        match self {
            BinCount::Auto => ((n_rows as f64).sqrt().round() as usize).max(1),
            BinCount::Fixed(b) => b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineSpec {
    Knn { k: usize },
    Hbos { bins: BinCount },
}

impl BaselineSpec {
    pub fn knn() -> Self {
        BaselineSpec::Knn { k: DEFAULT_K }
    }

    pub fn hbos() -> Self {
        BaselineSpec::Hbos {
            bins: BinCount::Auto,
        }
    }

    pub fn scores(&self, m: &FeatureMatrix, workers: usize) -> Result<Vec<f64>> {
        match *self {
            BaselineSpec::Knn { k } => knn_scores(m, k, workers),
            BaselineSpec::Hbos { bins } => {
                let b = bins.resolve(m.n_rows());
                hbos_scores(m, b)
            }
        }
    }
}

impl FromStr for BaselineSpec {
    type Err = SpinexError;

    /// `knn`, `knn:K`, `hbos` or `hbos:BINS`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = match s.split_once(':') {
            Some((kind, arg)) => (kind, Some(arg)),
            None => (s, None),
        };
        let parse_count = |a: &str| {
            a.parse::<usize>()
                .map_err(|_| SpinexError::argument(format!("invalid count {a:?} in {s:?}")))
        };
        match (kind, arg) {
            ("knn", None) => Ok(BaselineSpec::knn()),
            ("knn", Some(a)) => Ok(BaselineSpec::Knn { k: parse_count(a)? }),
            ("hbos", None) => Ok(BaselineSpec::hbos()),
            ("hbos", Some(a)) => Ok(BaselineSpec::Hbos {
                bins: BinCount::Fixed(parse_count(a)?),
            }),
            _ => Err(SpinexError::argument(format!("unknown baseline {s:?}"))),
        }
    }
}

impl fmt::Display for BaselineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaselineSpec::Knn { k } if *k == DEFAULT_K => f.write_str("knn"),
            BaselineSpec::Knn { k } => write!(f, "knn:{k}"),
            BaselineSpec::Hbos { bins: BinCount::Auto } => f.write_str("hbos"),
            BaselineSpec::Hbos { bins: BinCount::Fixed(b) } => write!(f, "hbos:{b}"),
        }
    }
}

/// Mean euclidean distance from each row to its `k` nearest other rows.
pub fn knn_scores(m: &FeatureMatrix, k: usize, workers: usize) -> Result<Vec<f64>> {
    let n = m.n_rows();
    if k == 0 || k >= n {
        return Err(SpinexError::argument(format!(
            "k must lie in [1, {}], got {k}",
            n.saturating_sub(1)
        )));
    }
    map_indexed(n, workers, |i| {
        let row = m.row(i);
        let mut d: Vec<(f64, usize)> = m
            .rows()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(j, other)| (distance(row, other, DistanceMetric::Euclidean), j))
            .collect();
        d.select_nth_unstable_by(k - 1, |a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut nearest: Vec<f64> = d[..k].iter().map(|p| p.0).collect();
        nearest.sort_by(f64::total_cmp);
        nearest.iter().sum::<f64>() / k as f64
    })
}

/// Bin of `x` among `bins` equal-width bins over `[min, max]`; the maximum
/// lands in the last bin.
fn bin_index(x: f64, min: f64, max: f64, bins: usize) -> usize {
    if max == min {
        return 0;
    }
    let pos = ((x - min) / (max - min) * bins as f64).floor();
    (pos.max(0.0) as usize).min(bins - 1)
}

/// Sum over features of `ln(1 / (height + 1e-12))`, where heights are bin
/// frequencies divided by the feature's largest bin frequency.
pub fn hbos_scores(m: &FeatureMatrix, bins: usize) -> Result<Vec<f64>> {
    if bins == 0 {
        return Err(SpinexError::argument("bin count must be at least 1"));
    }
    let n = m.n_rows();
    let mut scores = vec![0.0; n];
    for col in m.columns() {
        let min = col.iter().copied().fold(f64::INFINITY, f64::min);
        let max = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let assigned: Vec<usize> = col.iter().map(|&x| bin_index(x, min, max, bins)).collect();
        let mut counts = vec![0usize; bins];
        for &b in &assigned {
            counts[b] += 1;
        }
        let peak = *counts.iter().max().expect("at least one bin") as f64;
        for (s, &b) in scores.iter_mut().zip(&assigned) {
            let height = counts[b] as f64 / peak;
            *s += (1.0 / (height + HEIGHT_FLOOR)).ln();
        }
    }
    Ok(scores)
}

/// Baseline scores flagged with the fixed percentile rule.
pub fn run_baseline(
    m: &FeatureMatrix,
    spec: &BaselineSpec,
    tau: f64,
    workers: usize,
) -> Result<DetectionResult> {
    let scores = spec.scores(m, workers)?;
    let threshold = fixed_threshold(&scores, tau)?;
    Ok(DetectionResult::from_scores(scores, threshold))
}
