use crate::detector::config::ScalingMethod;
use crate::error::Result;
use crate::matrix::FeatureMatrix;
use crate::stats;

/// Per-column scaling. Constant columns become all-zero under every method;
/// any other zero denominator (an interquartile range of zero) is replaced
/// by 1 so values are only shifted.
pub fn apply_scaling(m: &FeatureMatrix, method: ScalingMethod) -> Result<FeatureMatrix> {
    let columns = m
        .columns()
        .into_iter()
        .map(|col| scale_column(&col, method))
        .collect::<Result<Vec<_>>>()?;
    FeatureMatrix::from_columns(columns, Some(m.column_names().to_vec()))
}

fn scale_column(col: &[f64], method: ScalingMethod) -> Result<Vec<f64>> {
    if col.iter().all(|&v| v == col[0]) {
        return Ok(vec![0.0; col.len()]);
    }
    let (center, spread) = match method {
        ScalingMethod::Standard => (
            stats::mean(col),
            stats::population_variance(col).sqrt(),
        ),
        ScalingMethod::MinMax => {
            let min = col.iter().copied().fold(f64::INFINITY, f64::min);
            let max = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (min, max - min)
        }
        ScalingMethod::Robust => {
            let mut sorted = col.to_vec();
            sorted.sort_by(f64::total_cmp);
            let q1 = stats::percentile_sorted(&sorted, 25.0)?;
            let q3 = stats::percentile_sorted(&sorted, 75.0)?;
            (q1, q3 - q1)
        }
    };
    let spread = if spread == 0.0 { 1.0 } else { spread };
    Ok(col.iter().map(|v| (v - center) / spread).collect())
}
