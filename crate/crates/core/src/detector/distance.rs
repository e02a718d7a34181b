use serde::{Deserialize, Serialize};

use crate::detector::config::DistanceMetric;
use crate::error::{Result, SpinexError};
use crate::matrix::FeatureMatrix;
use crate::stats;

/// Floor added to every column variance so no feature is weighted to zero.
pub const WEIGHT_FLOOR: f64 = 1e-8;

/// Per-column weights derived from the column variances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(SpinexError::argument(format!(
                "weights must be finite and nonnegative, got {w}"
            )));
        }
        Ok(Self(weights))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Population variance of every column plus [`WEIGHT_FLOOR`].
pub fn compute_weights(work: &FeatureMatrix) -> WeightVector {
    WeightVector(
        (0..work.n_cols())
            .map(|j| stats::population_variance(&work.column(j)) + WEIGHT_FLOOR)
            .collect(),
    )
}

/// Multiplies every column by `sqrt(w_j)`, so plain distances on the result
/// are the weighted distances on the input.
pub fn apply_weights(work: &FeatureMatrix, weights: &WeightVector) -> Result<FeatureMatrix> {
    check_weights(work, weights)?;
    let roots: Vec<f64> = weights.0.iter().map(|w| w.sqrt()).collect();
    let n_cols = work.n_cols();
    work.map_indexed(|idx, v| v * roots[idx % n_cols])
}

fn check_weights(work: &FeatureMatrix, weights: &WeightVector) -> Result<()> {
    if weights.len() != work.n_cols() {
        return Err(SpinexError::argument(format!(
            "{} weights given for {} columns",
            weights.len(),
            work.n_cols()
        )));
    }
    Ok(())
}

#[inline]
pub(crate) fn distance(a: &[f64], b: &[f64], metric: DistanceMetric) -> f64 {
    match metric {
        DistanceMetric::Euclidean => a
            .iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt(),
        DistanceMetric::Manhattan => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
        DistanceMetric::Minkowski { p } => a
            .iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs().powf(p))
            .sum::<f64>()
            .powf(1.0 / p),
    }
}

/// Distances from row `row_index` to every row (itself included, at 0).
///
/// With weights, both rows are premultiplied by `sqrt(w)` before the metric
/// is applied; for the euclidean metric this is `sqrt(sum w_i (r_i - x_i)^2)`.
pub fn row_distances(
    work: &FeatureMatrix,
    row_index: usize,
    weights: Option<&WeightVector>,
    metric: DistanceMetric,
) -> Result<Vec<f64>> {
    if row_index >= work.n_rows() {
        return Err(SpinexError::argument(format!(
            "row index {row_index} out of range for {} rows",
            work.n_rows()
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
    Ok(distances_from(m, row_index, metric))
}

pub(crate) fn distances_from(m: &FeatureMatrix, row_index: usize, metric: DistanceMetric) -> Vec<f64> {
    let r = m.row(row_index);
    m.rows().map(|x| distance(r, x, metric)).collect()
}
