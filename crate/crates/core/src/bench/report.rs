//! Self-describing JSON report of one detection run.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::detector::{
    explain, prepare_working_matrix, threshold_for, compute_scores, DetectorConfig,
    ExplainabilityLevel, Explanation,
};
use crate::error::{Result, SpinexError};
use crate::matrix::FeatureMatrix;
use crate::stats;

/// Per-column summary of a matrix, emitted in place of distribution plots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnSummary {
    pub name: String,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transformations {
    pub original: Vec<ColumnSummary>,
    pub working: Vec<ColumnSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub config: DetectorConfig,
    pub threshold: f64,
    pub scores: Vec<f64>,
    pub flagged: Vec<usize>,
    pub explanations: Vec<Explanation>,
    /// Ground-truth labels carried over from the input, never used as
    /// features.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transformations: Option<Transformations>,
}

fn summarize(m: &FeatureMatrix) -> Vec<ColumnSummary> {
    m.column_names()
        .iter()
        .enumerate()
        .map(|(j, name)| {
            let col = m.column(j);
            ColumnSummary {
                name: name.clone(),
                mean: stats::mean(&col),
                std: stats::population_variance(&col).sqrt(),
                min: col.iter().copied().fold(f64::INFINITY, f64::min),
                max: col.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            }
        })
        .collect()
}

/// Runs the detector on `m` and explains every flagged row.
pub fn build_report(
    m: &FeatureMatrix,
    config: &DetectorConfig,
    labels: Option<Vec<u8>>,
) -> Result<DetectionReport> {
    config.validate()?;
    if m.n_rows() < 2 {
        return Err(SpinexError::Degenerate(format!(
            "at least 2 rows are needed, got {}",
            m.n_rows()
        )));
    }
    if let Some(l) = &labels {
        if l.len() != m.n_rows() {
            return Err(SpinexError::argument(format!(
                "{} labels for {} rows",
                l.len(),
                m.n_rows()
            )));
        }
    }
    let work = prepare_working_matrix(m, config)?;
    let scores = compute_scores(
        &work.matrix,
        work.weights.as_ref(),
        config.distance_metric,
        config.worker_count,
    )?;
    let threshold = threshold_for(&scores, config)?;
    let flagged: Vec<usize> = (0..scores.len()).filter(|&i| scores[i] > threshold).collect();
    let explanations = explain(m, &flagged)?;
    let transformations = (config.explainability_level == ExplainabilityLevel::Advanced).then(|| {
        Transformations {
            original: summarize(m),
            working: summarize(&work.matrix),
        }
    });
    Ok(DetectionReport {
        config: config.clone(),
        threshold,
        scores,
        flagged,
        explanations,
        labels,
        transformations,
    })
}

impl DetectionReport {
    pub fn predictions(&self) -> Vec<i8> {
        crate::detector::predictions_for(self.scores.len(), &self.flagged)
    }

    pub fn write_json<W: Write>(&self, mut writer: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut writer, self)?;
        writer
            .write_all(b"\n")
            .map_err(|e| SpinexError::io("<json>", e))?;
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| SpinexError::io(path, e))?;
        let mut w = BufWriter::new(file);
        self.write_json(&mut w)?;
        w.flush().map_err(|e| SpinexError::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| SpinexError::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}
