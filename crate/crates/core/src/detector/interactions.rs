use crate::error::Result;
use crate::matrix::FeatureMatrix;

/// Number of interaction columns produced for `n` base features.
pub fn interaction_count(n: usize, use_nonlinear: bool) -> usize {
    let linear = n * n.saturating_sub(1) / 2;
    if use_nonlinear {
        2 * linear
    } else {
        linear
    }
}

/// Pairwise products `x_i * x_j` for `i < j`, each optionally followed by
/// its transformed copy. Returns `None` when there are no pairs.
pub fn precompute_interactions(
    m: &FeatureMatrix,
    use_nonlinear: bool,
) -> Result<Option<FeatureMatrix>> {
    let n = m.n_cols();
    let base = m.columns();
    let mut columns = Vec::with_capacity(interaction_count(n, use_nonlinear));
    let mut names = Vec::with_capacity(columns.capacity());
    for i in 0..n {
        for j in i + 1..n {
            let product: Vec<f64> = base[i].iter().zip(&base[j]).map(|(a, b)| a * b).collect();
            if use_nonlinear {
                let transformed = select_transformation(&product);
                columns.push(product);
                columns.push(transformed);
                names.push(format!("Interaction_{}_{}_linear", i + 1, j + 1));
                names.push(format!("Interaction_{}_{}_nonlinear", i + 1, j + 1));
            } else {
                columns.push(product);
                names.push(format!("Interaction_{}_{}_linear", i + 1, j + 1));
            }
        }
    }
    debug_assert_eq!(columns.len(), interaction_count(n, use_nonlinear));
    if columns.is_empty() {
        return Ok(None);
    }
    FeatureMatrix::from_columns(columns, Some(names)).map(Some)
}

/// `sqrt(|x|)` for every element if any element is `<= 0`, otherwise
/// `ln(1 + x)`. The branch is chosen once for the whole column.
pub fn select_transformation(col: &[f64]) -> Vec<f64> {
    if col.iter().any(|&x| x <= 0.0) {
        col.iter().map(|x| x.abs().sqrt()).collect()
    } else {
        col.iter().map(|x| x.ln_1p()).collect()
    }
}
