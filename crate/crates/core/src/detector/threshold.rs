use crate::error::{Result, SpinexError};
use crate::stats;

/// Percentile `tau` of the non-NaN scores.
pub fn fixed_threshold(scores: &[f64], tau: f64) -> Result<f64> {
    if !(0.0..=100.0).contains(&tau) {
        return Err(SpinexError::argument(
            "Anomaly threshold must be between 0 and 100",
        ));
    }
    if scores.is_empty() {
        return Err(SpinexError::Threshold("Scores array is empty.".into()));
    }
    let finite: Vec<f64> = scores.iter().copied().filter(|s| !s.is_nan()).collect();
    if finite.is_empty() {
        return Err(SpinexError::Threshold(
            "Scores array contains only NaN values.".into(),
        ));
    }
    stats::percentile(&finite, tau)
}

/// `mean + multiplier * std` with the sample standard deviation.
pub fn statistical_threshold(scores: &[f64], multiplier: f64) -> Result<f64> {
    if scores.is_empty() {
        return Err(SpinexError::Threshold("Scores array is empty.".into()));
    }
    Ok(stats::mean(scores) + multiplier * stats::sample_std(scores))
}

/// Percentile `quantile * 100` of the last `window_size` scores, or of all
/// scores when there are no more than `window_size` of them.
pub fn adaptive_quantile_threshold(
    scores: &[f64],
    window_size: usize,
    quantile: f64,
) -> Result<f64> {
    if scores.is_empty() {
        return Err(SpinexError::Threshold("Scores array is empty.".into()));
    }
    if !(quantile > 0.0 && quantile < 1.0) {
        return Err(SpinexError::argument(format!(
            "quantile must lie in (0, 1), got {quantile}"
        )));
    }
    if window_size == 0 {
        return Err(SpinexError::argument("window size must be at least 1"));
    }
    let recent = if scores.len() <= window_size {
        scores
    } else {
        &scores[scores.len() - window_size..]
    };
    stats::percentile(recent, quantile * 100.0)
}
