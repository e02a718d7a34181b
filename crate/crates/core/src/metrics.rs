//! Confusion counts, precision / recall / F1 and ROC-AUC.
//!
//! Labels use `1` for an anomaly and `0` for a normal row; predictions use
//! `-1` for an anomaly and `1` for a normal row. The anomaly is the positive
//! class. Larger scores are more anomalous.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpinexError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    pub fn_: u64,
}

impl ConfusionCounts {
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.tn + self.fn_
    }

    /// Nothing was predicted positive, so precision is 0/0.
    pub fn precision_undefined(&self) -> bool {
        self.tp + self.fp == 0
    }

    /// No actual positives, so recall is 0/0.
    pub fn recall_undefined(&self) -> bool {
        self.tp + self.fn_ == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricRecord {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub auc: f64,
}

pub fn confusion(labels: &[u8], predictions: &[i8]) -> Result<ConfusionCounts> {
    if labels.len() != predictions.len() {
        return Err(SpinexError::argument(format!(
            "{} labels but {} predictions",
            labels.len(),
            predictions.len()
        )));
    }
    if labels.is_empty() {
        return Err(SpinexError::argument("no labels given"));
    }
    let mut c = ConfusionCounts::default();
    for (i, (&l, &p)) in labels.iter().zip(predictions).enumerate() {
        match (l, p) {
            (1, -1) => c.tp += 1,
            (0, -1) => c.fp += 1,
            (1, 1) => c.fn_ += 1,
            (0, 1) => c.tn += 1,
            (1 | 0, p) => {
                return Err(SpinexError::argument(format!(
                    "prediction {p} at position {i} is not 1 or -1"
                )))
            }
            (l, _) => {
                return Err(SpinexError::argument(format!(
                    "label {l} at position {i} is not 0 or 1"
                )))
            }
        }
    }
    Ok(c)
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// `TP/(TP+FP)`, `TP/(TP+FN)` and `2TP/(2TP+FP+FN)`; every 0/0 is 0.
pub fn precision_recall_f1(c: &ConfusionCounts) -> (f64, f64, f64) {
    (
        ratio(c.tp, c.tp + c.fp),
        ratio(c.tp, c.tp + c.fn_),
        ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn_),
    )
}

/// Trapezoidal area under the ROC curve. Tied scores form a single step, so
/// the result equals the Mann-Whitney statistic with half credit for ties.
pub fn auc_roc(labels: &[u8], scores: &[f64]) -> Result<f64> {
    if labels.len() != scores.len() {
        return Err(SpinexError::argument(format!(
            "{} labels but {} scores",
            labels.len(),
            scores.len()
        )));
    }
    if let Some(l) = labels.iter().find(|&&l| l > 1) {
        return Err(SpinexError::argument(format!("label {l} is not 0 or 1")));
    }
    if scores.iter().any(|s| s.is_nan()) {
        return Err(SpinexError::argument("scores contain NaN"));
    }
    let pos = labels.iter().filter(|&&l| l == 1).count() as u64;
    let neg = labels.len() as u64 - pos;
    if pos == 0 || neg == 0 {
        return Err(SpinexError::UndefinedAuc(
            "labels contain a single class".into(),
        ));
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));

    // twice the area in units of (1/neg) x (1/pos), kept in integers
    let (mut tp, mut fp, mut area2) = (0u64, 0u64, 0u128);
    let mut i = 0;
    while i < order.len() {
        let s = scores[order[i]];
        let (tp0, fp0) = (tp, fp);
        while i < order.len() && scores[order[i]] == s {
            if labels[order[i]] == 1 {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        area2 += u128::from(fp - fp0) * u128::from(tp + tp0);
    }
    Ok(area2 as f64 / (2.0 * pos as f64 * neg as f64))
}
