//! Fixtures shared by the criterion benchmarks.

use spinex_core::bench::gaussian_matrix;
use spinex_core::FeatureMatrix;

/// Seeded standard normal matrix of the given shape.
pub fn fixture(n: usize, d: usize) -> FeatureMatrix {
    gaussian_matrix(n, d, 42).expect("finite gaussian fixture")
}

/// Alternating 0/1 labels with scores that mostly separate them, for AUC
/// timing.
pub fn labelled_scores(n: usize) -> (Vec<u8>, Vec<f64>) {
    let labels: Vec<u8> = (0..n).map(|i| u8::from(i % 7 == 0)).collect();
    let scores = labels
        .iter()
        .enumerate()
        .map(|(i, &l)| f64::from(l) + ((i * 2654435761) % 1000) as f64 / 700.0)
        .collect();
    (labels, scores)
}
