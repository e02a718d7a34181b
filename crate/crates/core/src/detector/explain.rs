use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpinexError};
use crate::matrix::FeatureMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contribution {
    pub feature: String,
    pub value: f64,
    pub baseline: f64,
    /// `|value - baseline|`
    pub contribution: f64,
}

impl fmt::Display for Contribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {:.2} (baseline: {:.2}, contribution: {:.2})",
            self.feature, self.value, self.baseline, self.contribution
        )
    }
}

/// Per-feature contributions for one flagged row, largest first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Explanation {
    pub row_index: usize,
    pub entries: Vec<Contribution>,
}

impl fmt::Display for Explanation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Anomaly at index {}:", self.row_index)?;
        for entry in &self.entries {
            writeln!(f, "- {entry}")?;
        }
        Ok(())
    }
}

/// Explains each flagged row against the column means of `original`, which
/// must hold the unscaled input features.
pub fn explain(original: &FeatureMatrix, flagged: &[usize]) -> Result<Vec<Explanation>> {
    if let Some(&bad) = flagged.iter().find(|&&i| i >= original.n_rows()) {
        return Err(SpinexError::argument(format!(
            "row index {bad} out of range for {} rows",
            original.n_rows()
        )));
    }
    let baseline = original.column_means();
    Ok(flagged
        .iter()
        .map(|&row_index| {
            let mut entries: Vec<Contribution> = original
                .row(row_index)
                .iter()
                .zip(&baseline)
                .zip(original.column_names())
                .map(|((&value, &b), name)| Contribution {
                    feature: name.clone(),
                    value,
                    baseline: b,
                    contribution: (value - b).abs(),
                })
                .collect();
            // stable: equal contributions keep column order
            entries.sort_by(|a, b| b.contribution.total_cmp(&a.contribution));
            Explanation { row_index, entries }
        })
        .collect())
}
