//! Small numeric kernels shared by the detector, the baselines and the
//! benchmark harness.
//!
//! Sums go through [`exact_sum`], which returns the correctly rounded sum of
//! its inputs. The result does not depend on summation order, so row
//! permutations of the input leave every derived statistic bit-identical.

use crate::error::{Result, SpinexError};

/// Correctly rounded floating point sum (Shewchuk's algorithm, as used by
/// Python's `math.fsum`). Inputs must be finite.
pub fn exact_sum<I>(values: I) -> f64
where
    I: IntoIterator<Item = f64>,
{
    let mut partials: Vec<f64> = Vec::new();
    for mut x in values {
        let mut i = 0;
        for j in 0..partials.len() {
            let mut y = partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[i] = lo;
                i += 1;
            }
            x = hi;
        }
        partials.truncate(i);
        partials.push(x);
    }

    let Some(mut hi) = partials.pop() else {
        return 0.0;
    };
    let mut lo = 0.0;
    while let Some(y) = partials.pop() {
        let x = hi;
        hi = x + y;
        let yr = hi - x;
        lo = y - yr;
        if lo != 0.0 {
            break;
        }
    }
    // Round-half-even correction when the remaining partials push the
    // discarded half ulp over the tie.
    if let Some(&next) = partials.last() {
        if (lo < 0.0 && next < 0.0) || (lo > 0.0 && next > 0.0) {
            let y = lo * 2.0;
            let x = hi + y;
            let yr = x - hi;
            if y == yr {
                hi = x;
            }
        }
    }
    hi
}

pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    exact_sum(values.iter().copied()) / values.len() as f64
}

/// Population variance (divisor `m`).
pub fn population_variance(values: &[f64]) -> f64 {
    let mu = mean(values);
    exact_sum(values.iter().map(|v| (v - mu) * (v - mu))) / values.len() as f64
}

/// Sample standard deviation (divisor `m - 1`); zero for a single value.
pub fn sample_std(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let mu = mean(values);
    let ss = exact_sum(values.iter().map(|v| (v - mu) * (v - mu)));
    (ss / (values.len() - 1) as f64).sqrt()
}

/// Linear-interpolation percentile of already sorted values.
///
/// Position `p = (q / 100) * (m - 1)`, result
/// `s[floor(p)] + frac(p) * (s[ceil(p)] - s[floor(p)])`.
pub fn percentile_sorted(sorted: &[f64], q: f64) -> Result<f64> {
    if sorted.is_empty() {
        return Err(SpinexError::Threshold("Scores array is empty.".into()));
    }
    if !(0.0..=100.0).contains(&q) {
        return Err(SpinexError::argument(format!(
            "percentile must be between 0 and 100, got {q}"
        )));
    }
    let pos = q / 100.0 * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    Ok(sorted[lo] + frac * (sorted[hi] - sorted[lo]))
}

/// Linear-interpolation percentile; sorts a copy of `values`.
pub fn percentile(values: &[f64], q: f64) -> Result<f64> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    percentile_sorted(&sorted, q)
}
