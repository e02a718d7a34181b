//! Brute-force reference computations, written without any library code so
//! they can check it.

#![allow(dead_code, clippy::needless_range_loop)]

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scale {
    Standard,
    MinMax,
    Robust,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Metric {
    Euclidean,
    Manhattan,
    Minkowski(f64),
}

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    pub scale: Option<Scale>,
    pub interactions: bool,
    pub nonlinear: bool,
    pub weights: bool,
    pub metric: Metric,
}

fn column(rows: &[Vec<f64>], j: usize) -> Vec<f64> {
    rows.iter().map(|r| r[j]).collect()
}

fn naive_mean(xs: &[f64]) -> f64 {
    let mut s = 0.0;
    for x in xs {
        s += x;
    }
    s / xs.len() as f64
}

fn naive_pop_var(xs: &[f64]) -> f64 {
    let mu = naive_mean(xs);
    let mut s = 0.0;
    for x in xs {
        s += (x - mu) * (x - mu);
    }
    s / xs.len() as f64
}

/// numpy-style linear percentile.
pub fn linear_percentile(xs: &[f64], q: f64) -> f64 {
    let mut s = xs.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let p = q / 100.0 * (s.len() - 1) as f64;
    let lo = p.floor() as usize;
    let hi = p.ceil() as usize;
    s[lo] + (p - lo as f64) * (s[hi] - s[lo])
}

fn scale_column(col: &[f64], how: Scale) -> Vec<f64> {
    if col.iter().all(|&v| v == col[0]) {
        return vec![0.0; col.len()];
    }
    let (c, mut s) = match how {
        Scale::Standard => (naive_mean(col), naive_pop_var(col).sqrt()),
        Scale::MinMax => {
            let lo = col.iter().cloned().fold(f64::MAX, f64::min);
            let hi = col.iter().cloned().fold(f64::MIN, f64::max);
            (lo, hi - lo)
        }
        Scale::Robust => {
            let q1 = linear_percentile(col, 25.0);
            (q1, linear_percentile(col, 75.0) - q1)
        }
    };
    if s == 0.0 {
        s = 1.0;
    }
    col.iter().map(|x| (x - c) / s).collect()
}

pub fn working_matrix(rows: &[Vec<f64>], cfg: &OracleConfig) -> Vec<Vec<f64>> {
    let d = rows[0].len();
    let mut cols: Vec<Vec<f64>> = (0..d).map(|j| column(rows, j)).collect();
    if let Some(how) = cfg.scale {
        cols = cols.iter().map(|c| scale_column(c, how)).collect();
    }
    if cfg.interactions {
        let base = cols.clone();
        for i in 0..d {
            for j in i + 1..d {
                let prod: Vec<f64> = (0..rows.len()).map(|r| base[i][r] * base[j][r]).collect();
                cols.push(prod.clone());
                if cfg.nonlinear {
                    let any_nonpos = prod.iter().any(|&x| x <= 0.0);
                    cols.push(
                        prod.iter()
                            .map(|&x| if any_nonpos { x.abs().sqrt() } else { (1.0 + x).ln() })
                            .collect(),
                    );
                }
            }
        }
    }
    (0..rows.len())
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect()
}

pub fn weights(work: &[Vec<f64>]) -> Vec<f64> {
    (0..work[0].len())
        .map(|j| naive_pop_var(&column(work, j)) + 1e-8)
        .collect()
}

pub fn distance(a: &[f64], b: &[f64], w: Option<&[f64]>, metric: Metric) -> f64 {
    let mut acc = 0.0;
    for j in 0..a.len() {
        let wj = w.map_or(1.0, |w| w[j]);
        match metric {
            Metric::Euclidean => acc += wj * (a[j] - b[j]).powi(2),
            Metric::Manhattan => acc += wj.sqrt() * (a[j] - b[j]).abs(),
            Metric::Minkowski(p) => acc += (wj.sqrt() * (a[j] - b[j]).abs()).powf(p),
        }
    }
    match metric {
        Metric::Euclidean => acc.sqrt(),
        Metric::Manhattan => acc,
        Metric::Minkowski(p) => acc.powf(1.0 / p),
    }
}

/// Literal D, column-mean baseline b, and sum_k |D[i][k] - b[k]|.
pub fn scores(rows: &[Vec<f64>], cfg: &OracleConfig) -> Vec<f64> {
    let work = working_matrix(rows, cfg);
    let w = cfg.weights.then(|| weights(&work));
    let n = work.len();
    let mut dist = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            dist[i][k] = distance(&work[i], &work[k], w.as_deref(), cfg.metric);
        }
    }
    let mut b = vec![0.0; n];
    for k in 0..n {
        for i in 0..n {
            b[k] += dist[i][k];
        }
        b[k] /= n as f64;
    }
    (0..n)
        .map(|i| (0..n).map(|k| (dist[i][k] - b[k]).abs()).sum())
        .collect()
}

/// Mann-Whitney pair counting with half credit for ties.
pub fn pair_count_auc(labels: &[u8], scores: &[f64]) -> f64 {
    let (mut credit, mut pairs) = (0.0, 0.0);
    for i in 0..labels.len() {
        for j in 0..labels.len() {
            if labels[i] == 1 && labels[j] == 0 {
                pairs += 1.0;
                if scores[i] > scores[j] {
                    credit += 1.0;
                } else if scores[i] == scores[j] {
                    credit += 0.5;
                }
            }
        }
    }
    credit / pairs
}

/// Sorts each row's n-1 distances to the other rows and averages the first k.
pub fn knn_scores(rows: &[Vec<f64>], k: usize) -> Vec<f64> {
    (0..rows.len())
        .map(|i| {
            let mut d: Vec<f64> = (0..rows.len())
                .filter(|&j| j != i)
                .map(|j| distance(&rows[i], &rows[j], None, Metric::Euclidean))
                .collect();
            d.sort_by(|a, b| a.partial_cmp(b).unwrap());
            d[..k].iter().sum::<f64>() / k as f64
        })
        .collect()
}

/// Explicit bin edges, counts and per-feature log sums.
pub fn hbos_scores(rows: &[Vec<f64>], bins: usize) -> Vec<f64> {
    let n = rows.len();
    let mut out = vec![0.0; n];
    for j in 0..rows[0].len() {
        let col = column(rows, j);
        let lo = col.iter().cloned().fold(f64::MAX, f64::min);
        let hi = col.iter().cloned().fold(f64::MIN, f64::max);
        let assign = |x: f64| -> usize {
            if hi == lo {
                return 0;
            }
            let mut b = 0;
            // edges lo + t * (hi - lo) / bins, t = 1..bins-1
            for t in 1..bins {
                if (x - lo) / (hi - lo) * bins as f64 >= t as f64 {
                    b = t;
                }
            }
            b
        };
        let mut counts = vec![0usize; bins];
        for &x in &col {
            counts[assign(x)] += 1;
        }
        let peak = *counts.iter().max().unwrap() as f64;
        for (i, &x) in col.iter().enumerate() {
            out[i] += (1.0 / (counts[assign(x)] as f64 / peak + 1e-12)).ln();
        }
    }
    out
}
