//! Wall-clock timing of a scoring path over an `(n, d)` grid, with a
//! log-log least-squares fit `ln t = alpha ln n + beta ln d + c`.

use std::fs::File;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::bench::run::AlgorithmSpec;
use crate::error::{Result, SpinexError};
use crate::matrix::FeatureMatrix;

/// Cells whose input matrix would exceed this many bytes are skipped.
pub const DEFAULT_MEMORY_BUDGET: usize = 1 << 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingCell {
    pub n: usize,
    pub d: usize,
    /// Median wall-clock seconds over the repeats; `None` when skipped.
    pub seconds: Option<f64>,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexityFit {
    pub alpha: f64,
    pub beta: f64,
    pub intercept: f64,
    /// `ln t - fitted` for every timed cell, in grid order.
    pub residuals: Vec<f64>,
    pub rms_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingGrid {
    pub algorithm: String,
    pub cells: Vec<TimingCell>,
    /// `None` when the timed cells do not determine both exponents.
    pub fit: Option<ComplexityFit>,
}

#[derive(Debug, Clone)]
pub struct ComplexityOptions {
    pub repeats: usize,
    pub seed: u64,
    pub workers: usize,
    pub memory_budget: usize,
}

impl Default for ComplexityOptions {
    fn default() -> Self {
        Self {
            repeats: 3,
            seed: 0,
            workers: 1,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

/// Standard normal `n x d` matrix from ChaCha8 seeded with `seed ^ n ^ d`
/// mixed through distinct multipliers.
pub fn gaussian_matrix(n: usize, d: usize, seed: u64) -> Result<FeatureMatrix> {
    let mixed = seed
        ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (d as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    let mut rng = ChaCha8Rng::seed_from_u64(mixed);
    let values = (0..n * d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    FeatureMatrix::from_flat(n, d, values, None)
}

pub fn measure_complexity(
    grid_n: &[usize],
    grid_d: &[usize],
    algorithm: &AlgorithmSpec,
    options: &ComplexityOptions,
) -> Result<TimingGrid> {
    if grid_n.is_empty() || grid_d.is_empty() {
        return Err(SpinexError::argument("timing grids must not be empty"));
    }
    if options.repeats == 0 {
        return Err(SpinexError::argument("repeats must be at least 1"));
    }
    let mut cells = Vec::with_capacity(grid_n.len() * grid_d.len());
    for &n in grid_n {
        for &d in grid_d {
            cells.push(time_cell(n, d, algorithm, options));
        }
    }
    let fit = fit_exponents(&cells);
    Ok(TimingGrid {
        algorithm: algorithm.name.clone(),
        cells,
        fit,
    })
}

fn time_cell(n: usize, d: usize, algorithm: &AlgorithmSpec, options: &ComplexityOptions) -> TimingCell {
    let skipped = |status: String| TimingCell {
        n,
        d,
        seconds: None,
        status,
    };
    let bytes = n.saturating_mul(d).saturating_mul(std::mem::size_of::<f64>());
    if bytes > options.memory_budget {
        return skipped(format!(
            "skipped: input needs {bytes} bytes, budget is {}",
            options.memory_budget
        ));
    }
    let m = match gaussian_matrix(n, d, options.seed) {
        Ok(m) => m,
        Err(e) => return skipped(format!("skipped: {e}")),
    };
    let mut times = Vec::with_capacity(options.repeats);
    for _ in 0..options.repeats {
        let start = Instant::now();
        let scores = algorithm.scores(&m, options.workers);
        let elapsed = start.elapsed().as_secs_f64();
        match scores {
            Ok(s) => {
                std::hint::black_box(s);
                times.push(elapsed);
            }
            Err(e) => return skipped(format!("skipped: {e}")),
        }
    }
    times.sort_by(f64::total_cmp);
    let mid = times.len() / 2;
    let median = if times.len() % 2 == 1 {
        times[mid]
    } else {
        (times[mid - 1] + times[mid]) / 2.0
    };
    TimingCell {
        n,
        d,
        seconds: Some(median),
        status: "ok".into(),
    }
}

/// Solves the 3x3 system `a x = b` by Gaussian elimination with partial
/// pivoting; `None` when a pivot vanishes.
#[allow(clippy::needless_range_loop)]
fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() <= 1e-10 * scale {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Some(x)
}

/// Least-squares fit of `ln t` on `[ln n, ln d, 1]` over the timed cells.
pub fn fit_exponents(cells: &[TimingCell]) -> Option<ComplexityFit> {
    let points: Vec<([f64; 3], f64)> = cells
        .iter()
        .filter_map(|c| {
            c.seconds.map(|t| {
                (
                    [(c.n as f64).ln(), (c.d as f64).ln(), 1.0],
                    t.max(1e-9).ln(),
                )
            })
        })
        .collect();
    if points.len() < 3 {
        return None;
    }
    let mut ata = [[0.0; 3]; 3];
    let mut atb = [0.0; 3];
    for (x, y) in &points {
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += x[i] * x[j];
            }
            atb[i] += x[i] * y;
        }
    }
    let [alpha, beta, intercept] = solve3(ata, atb)?;
    let residuals: Vec<f64> = points
        .iter()
        .map(|(x, y)| y - (alpha * x[0] + beta * x[1] + intercept))
        .collect();
    let rms_residual =
        (residuals.iter().map(|r| r * r).sum::<f64>() / residuals.len() as f64).sqrt();
    Some(ComplexityFit {
        alpha,
        beta,
        intercept,
        residuals,
        rms_residual,
    })
}

impl TimingGrid {
    /// Columns `n,d,seconds,status,log_residual`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["n", "d", "seconds", "status", "log_residual"])?;
        let mut residuals = self.fit.iter().flat_map(|f| f.residuals.iter());
        for c in &self.cells {
            let residual = match c.seconds {
                Some(_) => residuals.next().map(f64::to_string).unwrap_or_default(),
                None => String::new(),
            };
            w.write_record([
                c.n.to_string(),
                c.d.to_string(),
                c.seconds.map(|s| s.to_string()).unwrap_or_default(),
                c.status.clone(),
                residual,
            ])?;
        }
        w.flush().map_err(|e| SpinexError::io("<csv>", e))?;
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| SpinexError::io(path, e))?;
        self.write_csv(file)
    }

    pub fn summary(&self) -> String {
        match &self.fit {
            Some(f) => format!(
                "{}: time ~ n^{:.3} * d^{:.3} (intercept {:.3}, rms log residual {:.4})",
                self.algorithm, f.alpha, f.beta, f.intercept, f.rms_residual
            ),
            None => format!("{}: exponents undefined (grid does not determine the fit)", self.algorithm),
        }
    }
}
