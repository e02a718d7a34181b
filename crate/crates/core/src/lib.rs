//! Similarity-based anomaly detection.
//!
//! Each row is described by its distances to every other row. Rows whose
//! distance profile deviates most from the average profile are flagged, and
//! flagged rows are explained by how far each original feature sits from its
//! column mean.
//!
//! ```
//! use spinex_core::{detect, DetectorConfig, FeatureMatrix};
//!
//! let mut rows: Vec<Vec<f64>> = (0..50).map(|i| vec![(i % 5) as f64, (i % 7) as f64]).collect();
//! rows.push(vec![60.0, -40.0]);
//! let m = FeatureMatrix::new(rows, None).unwrap();
//! let result = detect(&m, &DetectorConfig::default()).unwrap();
//! assert!(result.flagged.contains(&50));
//! ```

pub mod baselines;
pub mod bench;
pub mod detector;
pub mod error;
pub mod matrix;
pub mod metrics;
mod parallel;
pub mod stats;
pub mod synthgen;

pub use baselines::{hbos_scores, knn_scores, run_baseline, BaselineSpec, BinCount};
pub use detector::{
    detect, explain, DetectionResult, Detector, DetectorConfig, DistanceMetric,
    ExplainabilityLevel, Explanation, ScalingMethod, ThresholdMethod, WeightVector,
};
pub use error::{Result, SpinexError};
pub use matrix::FeatureMatrix;
pub use metrics::{auc_roc, confusion, precision_recall_f1, ConfusionCounts, MetricRecord};
pub use synthgen::{generate_scenario, scenario, scenario_catalog, LabeledDataset, ScenarioSpec};
