use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpinexError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMetric {
    #[default]
    Euclidean,
    Manhattan,
    /// Minkowski distance with exponent `p > 0`.
    Minkowski { p: f64 },
}

impl FromStr for DistanceMetric {
    type Err = SpinexError;

    /// Accepts `euclidean`, `manhattan`, `minkowski` (p = 2) or `minkowski:P`.
    fn from_str(s: &str) -> Result<Self> {
        let metric = match s {
            "euclidean" => DistanceMetric::Euclidean,
            "manhattan" | "cityblock" => DistanceMetric::Manhattan,
            "minkowski" => DistanceMetric::Minkowski { p: 2.0 },
            other => match other.strip_prefix("minkowski:") {
                Some(p) => DistanceMetric::Minkowski {
                    p: p.parse().map_err(|_| {
                        SpinexError::argument(format!("invalid minkowski exponent {p:?}"))
                    })?,
                },
                None => {
                    return Err(SpinexError::argument(format!(
                        "Invalid distance metric: {other}. Valid options are: euclidean, manhattan, minkowski[:p]"
                    )))
                }
            },
        };
        metric.validate()?;
        Ok(metric)
    }
}

impl DistanceMetric {
    pub fn validate(&self) -> Result<()> {
        match *self {
            DistanceMetric::Minkowski { p } if !(p > 0.0 && p.is_finite()) => Err(
                SpinexError::argument(format!("minkowski exponent must be > 0, got {p}")),
            ),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for DistanceMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceMetric::Euclidean => f.write_str("euclidean"),
            DistanceMetric::Manhattan => f.write_str("manhattan"),
            DistanceMetric::Minkowski { p } => write!(f, "minkowski:{p}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingMethod {
    Standard,
    MinMax,
    Robust,
}

impl FromStr for ScalingMethod {
    type Err = SpinexError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(ScalingMethod::Standard),
            "minmax" => Ok(ScalingMethod::MinMax),
            "robust" => Ok(ScalingMethod::Robust),
            other => Err(SpinexError::argument(format!(
                "Invalid scaling method: {other}. Valid options are: standard, minmax, robust"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdMethod {
    #[default]
    Fixed,
    Statistical,
    AdaptiveQuantile,
}

impl FromStr for ThresholdMethod {
    type Err = SpinexError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed" => Ok(ThresholdMethod::Fixed),
            "statistical" => Ok(ThresholdMethod::Statistical),
            "adaptive_quantile" | "adaptive-quantile" => Ok(ThresholdMethod::AdaptiveQuantile),
            other => Err(SpinexError::argument(format!(
                "Unknown threshold method: {other}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ExplainabilityLevel {
    #[default]
    Basic,
    /// Also emits per-column summaries of the original and working matrices.
    Advanced,
}

impl FromStr for ExplainabilityLevel {
    type Err = SpinexError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "basic" => Ok(ExplainabilityLevel::Basic),
            "advanced" => Ok(ExplainabilityLevel::Advanced),
            other => Err(SpinexError::argument(format!(
                "Invalid explainability level: {other}. Valid options are: basic, advanced"
            ))),
        }
    }
}

/// Every knob of the detector.
///
/// `worker_count` only controls parallelism and never changes results, so it
/// is left out of serialized reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectorConfig {
    pub use_weights: bool,
    pub include_interactions: bool,
    pub use_nonlinear: bool,
    pub distance_metric: DistanceMetric,
    pub scaling_method: Option<ScalingMethod>,
    /// Percentile in `[0, 100]` used by the fixed threshold.
    pub anomaly_threshold: f64,
    pub threshold_method: ThresholdMethod,
    /// `k` in `mean + k * std` for the statistical threshold.
    pub multiplier: f64,
    pub window_size: usize,
    pub quantile: f64,
    #[serde(skip, default = "default_workers")]
    pub worker_count: usize,
    pub explainability_level: ExplainabilityLevel,
}

fn default_workers() -> usize {
    1
}

impl Default for DetectorConfig {
    fn default() -> Self {
        Self {
            use_weights: false,
            include_interactions: false,
            use_nonlinear: false,
            distance_metric: DistanceMetric::Euclidean,
            scaling_method: None,
            anomaly_threshold: 98.0,
            threshold_method: ThresholdMethod::Fixed,
            multiplier: 2.0,
            window_size: 50,
            quantile: 0.95,
            worker_count: 1,
            explainability_level: ExplainabilityLevel::Basic,
        }
    }
}

impl DetectorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=100.0).contains(&self.anomaly_threshold) {
            return Err(SpinexError::argument(
                "Anomaly threshold must be between 0 and 100",
            ));
        }
        if self.window_size == 0 {
            return Err(SpinexError::argument("window size must be at least 1"));
        }
        if !(self.quantile > 0.0 && self.quantile < 1.0) {
            return Err(SpinexError::argument(format!(
                "quantile must lie in (0, 1), got {}",
                self.quantile
            )));
        }
        if !self.multiplier.is_finite() {
            return Err(SpinexError::argument("multiplier must be finite"));
        }
        if self.worker_count == 0 {
            return Err(SpinexError::argument("worker count must be at least 1"));
        }
        self.distance_metric.validate()
    }
}
