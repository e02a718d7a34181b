//! Two-component PCA by power iteration with deflation, for plotting.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpinexError};
use crate::matrix::FeatureMatrix;

const TOLERANCE: f64 = 1e-9;
const MAX_ITERATIONS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Projection2d {
    /// `(pc1, pc2)` per row.
    pub coords: Vec<[f64; 2]>,
    /// Unit loadings of the two components.
    pub components: [Vec<f64>; 2],
    /// Variance captured by each component (covariance eigenvalues).
    pub explained_variance: [f64; 2],
    /// The data has no second direction of variance; `pc2` is all zero.
    pub second_degenerate: bool,
}

fn mat_vec(c: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    c.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = dot(v, v).sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

fn orthogonalize(v: &mut [f64], against: &[f64]) {
    let p = dot(v, against);
    v.iter_mut().zip(against).for_each(|(x, a)| *x -= p * a);
}

/// First nonzero loading made positive.
fn fix_sign(v: &mut [f64]) {
    if let Some(&first) = v.iter().find(|x| x.abs() > 1e-12) {
        if first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Dominant eigenvector of the symmetric matrix `c`, kept orthogonal to
/// `against`. Returns `None` if `c` has no variance in the remaining space.
fn power_iteration(c: &[Vec<f64>], against: Option<&[f64]>, scale: f64) -> Option<Vec<f64>> {
    let d = c.len();
    // deterministic start with mass on every coordinate, falling back to unit
    // vectors when it lies along `against`
    let spread: Vec<f64> = (0..d).map(|i| 1.0 + (i as f64 + 1.0).sqrt().fract()).collect();
    let units = (0..d).map(|k| (0..d).map(|i| f64::from(u8::from(i == k))).collect::<Vec<f64>>());
    let mut v = std::iter::once(spread).chain(units).find_map(|mut v| {
        if let Some(a) = against {
            orthogonalize(&mut v, a);
        }
        (normalize(&mut v) > 1e-6).then_some(v)
    })?;
    for _ in 0..MAX_ITERATIONS {
        let mut next = mat_vec(c, &v);
        if let Some(a) = against {
            orthogonalize(&mut next, a);
        }
        if normalize(&mut next) <= 1e-12 * scale {
            return None;
        }
        let delta = next.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = next;
        if delta < TOLERANCE {
            break;
        }
    }
    Some(v)
}

#[allow(clippy::needless_range_loop)]
pub fn pca_project_2d(m: &FeatureMatrix) -> Result<Projection2d> {
    let (n, d) = (m.n_rows(), m.n_cols());
    if n < 2 || d < 2 {
        return Err(SpinexError::argument(format!(
            "PCA projection needs at least 2 rows and 2 columns, got {n}x{d}"
        )));
    }
    let means = m.column_means();
    let centered: Vec<Vec<f64>> = m
        .rows()
        .map(|r| r.iter().zip(&means).map(|(x, mu)| x - mu).collect())
        .collect();
    let mut cov = vec![vec![0.0; d]; d];
    for row in &centered {
        for i in 0..d {
            for j in i..d {
                cov[i][j] += row[i] * row[j];
            }
        }
    }
    let denom = (n - 1) as f64;
    for i in 0..d {
        for j in i..d {
            cov[i][j] /= denom;
            cov[j][i] = cov[i][j];
        }
    }
    let trace: f64 = (0..d).map(|i| cov[i][i]).sum();
    let scale = trace.max(f64::MIN_POSITIVE);

    let mut first = power_iteration(&cov, None, scale).unwrap_or_else(|| {
        let mut e = vec![0.0; d];
        e[0] = 1.0;
        e
    });
    fix_sign(&mut first);
    let lambda1 = dot(&first, &mat_vec(&cov, &first));

    // deflate, then iterate in the orthogonal complement of the first axis
    let deflated: Vec<Vec<f64>> = (0..d)
        .map(|i| (0..d).map(|j| cov[i][j] - lambda1 * first[i] * first[j]).collect())
        .collect();
    let second = power_iteration(&deflated, Some(&first), scale);
    let (second, degenerate) = match second {
        Some(mut v) => {
            fix_sign(&mut v);
            (v, false)
        }
        None => (vec![0.0; d], true),
    };
    let lambda2 = if degenerate {
        0.0
    } else {
        dot(&second, &mat_vec(&cov, &second))
    };

    let coords = centered
        .iter()
        .map(|r| {
            let pc2 = if degenerate { 0.0 } else { dot(r, &second) };
            [dot(r, &first), pc2]
        })
        .collect();
    Ok(Projection2d {
        coords,
        components: [first, second],
        explained_variance: [lambda1, lambda2],
        second_degenerate: degenerate,
    })
}

/// Columns `pc1,pc2,label,flagged`; an absent label is written empty.
pub fn write_pca_csv<W: Write>(
    writer: W,
    projection: &Projection2d,
    labels: Option<&[u8]>,
    flagged: &[usize],
) -> Result<()> {
    let n = projection.coords.len();
    let mut is_flagged = vec![false; n];
    for &i in flagged {
        if i >= n {
            return Err(SpinexError::argument(format!("flagged row {i} out of range")));
        }
        is_flagged[i] = true;
    }
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["pc1", "pc2", "label", "flagged"])?;
    for (i, [a, b]) in projection.coords.iter().enumerate() {
        w.write_record([
            a.to_string(),
            b.to_string(),
            labels.map(|l| l[i].to_string()).unwrap_or_default(),
            u8::from(is_flagged[i]).to_string(),
        ])?;
    }
    w.flush().map_err(|e| SpinexError::io("<csv>", e))?;
    Ok(())
}
