use crate::detector::config::DistanceMetric;
use crate::detector::distance::{apply_weights, distances_from, WeightVector};
use crate::error::{Result, SpinexError};
use crate::matrix::FeatureMatrix;
use crate::parallel::map_indexed;
use crate::stats::exact_sum;

/// Above this many pairwise entries the distance table is recomputed in the
/// second pass instead of being held in memory.
const CACHE_LIMIT: usize = 1 << 22;

/// Anomaly score of every row.
///
/// With `D[i][k]` the distance between rows `i` and `k`, the baseline is the
/// column mean `b[k] = mean_i D[i][k]` and `score[i] = sum_k |D[i][k] - b[k]|`.
/// Every sum is correctly rounded, so scores are bit-identical for any worker
/// count and permute exactly with the rows.
pub fn compute_scores(
    work: &FeatureMatrix,
    weights: Option<&WeightVector>,
    metric: DistanceMetric,
    workers: usize,
) -> Result<Vec<f64>> {
    let n = work.n_rows();
    if n < 2 {
        return Err(SpinexError::Degenerate(format!(
            "at least 2 rows are needed to compare distances, got {n}"
        )));
    }
    metric.validate()?;
    let weighted;
    let m = match weights {
        Some(w) => {
            weighted = apply_weights(work, w)?;
            &weighted
        }
        None => work,
    };

    // D is symmetric bit for bit, so column k's mean is row k's mean.
    let cache_rows = n.saturating_mul(n) <= CACHE_LIMIT;
    let first = map_indexed(n, workers, |i| {
        let d = distances_from(m, i, metric);
        let mean = exact_sum(d.iter().copied()) / n as f64;
        (mean, cache_rows.then_some(d))
    })?;
    let (baseline, cached): (Vec<f64>, Vec<Option<Vec<f64>>>) = first.into_iter().unzip();

    map_indexed(n, workers, |i| {
        let score = |d: &[f64]| exact_sum(d.iter().zip(&baseline).map(|(x, b)| (x - b).abs()));
        match &cached[i] {
            Some(d) => score(d),
            None => score(&distances_from(m, i, metric)),
        }
    })
}

/// The column means of the distance table (the "normal behaviour" profile).
pub fn baseline_distances(
    work: &FeatureMatrix,
    weights: Option<&WeightVector>,
    metric: DistanceMetric,
    workers: usize,
) -> Result<Vec<f64>> {
    let weighted;
    let m = match weights {
        Some(w) => {
            weighted = apply_weights(work, w)?;
            &weighted
        }
        None => work,
    };
    let n = m.n_rows();
    map_indexed(n, workers, |i| {
        exact_sum(distances_from(m, i, metric)) / n as f64
    })
}
