//! The similarity-based detector.
//!
//! Pipeline: validate, optionally scale, optionally append pairwise feature
//! interactions, optionally weight every working column by its variance,
//! score each row by how far its distance profile sits from the mean profile,
//! threshold the scores and explain the flagged rows in the original feature
//! space.

pub mod config;
pub mod distance;
pub mod explain;
pub mod interactions;
pub mod scaling;
pub mod scoring;
pub mod threshold;

use serde::{Deserialize, Serialize};

pub use config::{
    DetectorConfig, DistanceMetric, ExplainabilityLevel, ScalingMethod, ThresholdMethod,
};
pub use distance::{compute_weights, row_distances, WeightVector};
pub use explain::{explain, Contribution, Explanation};
pub use interactions::{interaction_count, precompute_interactions, select_transformation};
pub use scaling::apply_scaling;
pub use scoring::{baseline_distances, compute_scores};
pub use threshold::{adaptive_quantile_threshold, fixed_threshold, statistical_threshold};

use crate::error::{Result, SpinexError};
use crate::matrix::FeatureMatrix;

/// Scores, threshold and the resulting flags for every row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionResult {
    pub scores: Vec<f64>,
    pub threshold: f64,
    /// Rows with `score > threshold`, ascending.
    pub flagged: Vec<usize>,
    /// `1` for normal rows, `-1` for flagged rows.
    pub predictions: Vec<i8>,
}

impl DetectionResult {
    /// Flags every row whose score is strictly above `threshold`.
    pub fn from_scores(scores: Vec<f64>, threshold: f64) -> Self {
        let flagged: Vec<usize> = scores
            .iter()
            .enumerate()
            .filter(|(_, &s)| s > threshold)
            .map(|(i, _)| i)
            .collect();
        let predictions = predictions_for(scores.len(), &flagged);
        Self {
            scores,
            threshold,
            flagged,
            predictions,
        }
    }
}

/// All rows start at `1`; flagged rows become `-1`.
pub fn predictions_for(n: usize, flagged: &[usize]) -> Vec<i8> {
    let mut p = vec![1i8; n];
    for &i in flagged {
        p[i] = -1;
    }
    p
}

/// The matrix distances are measured on, with the weights that apply to it.
#[derive(Debug, Clone)]
pub struct WorkingMatrix {
    pub matrix: FeatureMatrix,
    pub weights: Option<WeightVector>,
}

/// Scaling, interaction columns and weights, in that order.
pub fn prepare_working_matrix(m: &FeatureMatrix, config: &DetectorConfig) -> Result<WorkingMatrix> {
    let scaled = match config.scaling_method {
        Some(method) => apply_scaling(m, method)?,
        None => m.clone(),
    };
    let matrix = if config.include_interactions {
        match precompute_interactions(&scaled, config.use_nonlinear)? {
            Some(extra) => scaled.hstack(&extra)?,
            None => scaled,
        }
    } else {
        scaled
    };
    let weights = config.use_weights.then(|| compute_weights(&matrix));
    Ok(WorkingMatrix { matrix, weights })
}

pub fn threshold_for(scores: &[f64], config: &DetectorConfig) -> Result<f64> {
    match config.threshold_method {
        ThresholdMethod::Fixed => fixed_threshold(scores, config.anomaly_threshold),
        ThresholdMethod::Statistical => statistical_threshold(scores, config.multiplier),
        ThresholdMethod::AdaptiveQuantile => {
            adaptive_quantile_threshold(scores, config.window_size, config.quantile)
        }
    }
}

/// Immutable detector; safe to share between threads.
#[derive(Debug, Clone, Default)]
pub struct Detector {
    config: DetectorConfig,
}

impl Detector {
    pub fn new(config: DetectorConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self { config })
    }

    pub fn config(&self) -> &DetectorConfig {
        &self.config
    }

    pub fn score(&self, m: &FeatureMatrix) -> Result<Vec<f64>> {
        if m.n_rows() < 2 {
            return Err(SpinexError::Degenerate(format!(
                "at least 2 rows are needed, got {}",
                m.n_rows()
            )));
        }
        let work = prepare_working_matrix(m, &self.config)?;
        compute_scores(
            &work.matrix,
            work.weights.as_ref(),
            self.config.distance_metric,
            self.config.worker_count,
        )
    }

    pub fn detect(&self, m: &FeatureMatrix) -> Result<DetectionResult> {
        let scores = self.score(m)?;
        let threshold = threshold_for(&scores, &self.config)?;
        Ok(DetectionResult::from_scores(scores, threshold))
    }

    /// Explanations for the flagged rows of a previous detection on `m`.
    pub fn explain(&self, m: &FeatureMatrix, result: &DetectionResult) -> Result<Vec<Explanation>> {
        explain(m, &result.flagged)
    }
}

/// One-shot detection with `config`.
pub fn detect(m: &FeatureMatrix, config: &DetectorConfig) -> Result<DetectionResult> {
    Detector::new(config.clone())?.detect(m)
}
