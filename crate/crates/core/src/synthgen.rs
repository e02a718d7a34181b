//! Seeded synthetic datasets with planted outliers.
//!
//! Normal rows are drawn from `N(0, cov_scale * I)` and outlier rows from
//! `N(mean_shift * 1, cov_scale * I)`. Random numbers come from ChaCha8
//! seeded with the scenario seed; normal variates use the ziggurat sampler of
//! `rand_distr`, so a `(spec, seed)` pair gives the same dataset on every
//! platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SpinexError};
use crate::matrix::FeatureMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub mean_shift: f64,
    pub cov_scale: f64,
    pub outlier_fraction: f64,
    pub num_features: usize,
    pub complexity_level: u8,
    pub size: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub matrix: FeatureMatrix,
    /// `0` normal, `1` planted outlier.
    pub labels: Vec<u8>,
}

impl ScenarioSpec {
    /// `ceil(outlier_fraction * size)`, ignoring floating point noise in the
    /// product (`0.03 * 100` must give 3, not 4).
    pub fn outlier_count(&self) -> usize {
        let raw = self.outlier_fraction * self.size as f64;
        let nearest = raw.round();
        if (raw - nearest).abs() <= 1e-9 * raw.abs().max(1.0) {
            nearest as usize
        } else {
            raw.ceil() as usize
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cov_scale > 0.0 && self.cov_scale.is_finite()) {
            return Err(SpinexError::argument(format!(
                "cov_scale must be positive, got {}",
                self.cov_scale
            )));
        }
        if !self.mean_shift.is_finite() {
            return Err(SpinexError::argument("mean_shift must be finite"));
        }
        if !(0.0..=1.0).contains(&self.outlier_fraction) {
            return Err(SpinexError::argument(format!(
                "outlier_fraction must lie in [0, 1], got {}",
                self.outlier_fraction
            )));
        }
        if self.num_features == 0 {
            return Err(SpinexError::argument("num_features must be at least 1"));
        }
        if self.complexity_level > 2 {
            return Err(SpinexError::argument(format!(
                "complexity_level must be 0, 1 or 2, got {}",
                self.complexity_level
            )));
        }
        if self.complexity_level >= 1 && self.num_features < 2 {
            return Err(SpinexError::argument(
                "complexity levels above 0 need at least 2 features",
            ));
        }
        if self.size < 2 {
            return Err(SpinexError::argument("size must be at least 2"));
        }
        if self.outlier_count() >= self.size {
            return Err(SpinexError::argument(
                "outlier_fraction leaves no normal points",
            ));
        }
        Ok(())
    }
}

pub fn generate_scenario(spec: &ScenarioSpec) -> Result<LabeledDataset> {
    spec.validate()?;
    let d = spec.num_features;
    let n_out = spec.outlier_count();
    let n_norm = spec.size - n_out;
    let sd = spec.cov_scale.sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mut values = Vec::with_capacity(spec.size * d);
    for _ in 0..n_norm * d {
        let z: f64 = rng.sample(StandardNormal);
        values.push(sd * z);
    }
    for _ in 0..n_out * d {
        let z: f64 = rng.sample(StandardNormal);
        values.push(spec.mean_shift + sd * z);
    }
    let base = FeatureMatrix::from_flat(spec.size, d, values, None)?;
    let combined = augment_complexity(&base, spec.complexity_level)?;

    let mut labels = vec![0u8; n_norm];
    labels.resize(spec.size, 1);

    // Fisher-Yates over row indices, applied to rows and labels alike.
    let mut order: Vec<usize> = (0..spec.size).collect();
    order.shuffle(&mut rng);
    let matrix = combined.select_rows(&order);
    let labels = order.iter().map(|&i| labels[i]).collect();
    Ok(LabeledDataset { matrix, labels })
}

/// Level 1 appends `f1 * f2`; level 2 additionally appends `f_i^2` and then
/// `sin(f_i)` for every base feature. Output columns are named
/// `Feature1..FeatureK`.
pub fn augment_complexity(m: &FeatureMatrix, level: u8) -> Result<FeatureMatrix> {
    if level > 2 {
        return Err(SpinexError::argument(format!(
            "complexity_level must be 0, 1 or 2, got {level}"
        )));
    }
    if level == 0 {
        return Ok(m.clone());
    }
    if m.n_cols() < 2 {
        return Err(SpinexError::argument(
            "complexity levels above 0 need at least 2 features",
        ));
    }
    let mut columns = m.columns();
    let d = columns.len();
    let product = columns[0].iter().zip(&columns[1]).map(|(a, b)| a * b).collect();
    columns.push(product);
    if level > 1 {
        for j in 0..d {
            let sq = columns[j].iter().map(|x| x * x).collect();
            columns.push(sq);
        }
        for j in 0..d {
            let s = columns[j].iter().map(|x| x.sin()).collect();
            columns.push(s);
        }
    }
    FeatureMatrix::from_columns(columns, None)
}

/// The 21 benchmark scenarios: (mean shift, covariance scale, outlier
/// fraction, features, complexity level, size). Seed is the 1-based row
/// number.
pub const CATALOG: [(f64, f64, f64, usize, u8, usize); 21] = [
    (4.0, 1.2, 0.03, 3, 0, 100),
    (-1.0, 0.7, 0.04, 9, 1, 350),
    (5.0, 1.1, 0.12, 5, 2, 8000),
    (-4.0, 0.6, 0.08, 3, 0, 550),
    (2.0, 2.5, 0.07, 11, 0, 120),
    (-3.0, 0.3, 0.18, 19, 1, 300),
    (1.5, 0.9, 0.11, 16, 1, 400),
    (-2.0, 1.3, 0.16, 10, 2, 100),
    (-1.0, 0.4, 0.19, 4, 2, 320),
    (4.5, 0.9, 0.06, 25, 1, 4200),
    (-4.5, 0.7, 0.09, 11, 0, 520),
    (2.5, 1.6, 0.13, 14, 0, 130),
    (-3.5, 0.5, 0.11, 10, 2, 590),
    (1.2, 1.7, 0.17, 18, 1, 1400),
    (3.5, 1.2, 0.15, 13, 1, 440),
    (-1.5, 0.8, 0.22, 150, 0, 5040),
    (2.0, 1.0, 0.03, 3, 0, 200),
    (-2.0, 0.5, 0.04, 13, 1, 3000),
    (-1.0, 0.7, 0.05, 9, 2, 150),
    (3.0, 0.6, 0.02, 7, 1, 250),
    (-3.0, 1.1, 0.06, 30, 0, 1000),
];

pub fn scenario_catalog() -> Vec<ScenarioSpec> {
    CATALOG
        .iter()
        .enumerate()
        .map(
            |(i, &(mean_shift, cov_scale, outlier_fraction, num_features, complexity_level, size))| {
                ScenarioSpec {
                    mean_shift,
                    cov_scale,
                    outlier_fraction,
                    num_features,
                    complexity_level,
                    size,
                    seed: i as u64 + 1,
                }
            },
        )
        .collect()
}

/// Catalog entry by 1-based number.
pub fn scenario(number: usize) -> Result<ScenarioSpec> {
    if !(1..=CATALOG.len()).contains(&number) {
        return Err(SpinexError::argument(format!(
            "scenario must be between 1 and {}, got {number}",
            CATALOG.len()
        )));
    }
    Ok(scenario_catalog().swap_remove(number - 1))
}
