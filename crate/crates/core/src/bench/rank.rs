//! Sum-of-ranks aggregation across metrics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs::File;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bench::run::MetricTable;
use crate::error::{Result, SpinexError};
use crate::stats::exact_sum;

pub const METRIC_NAMES: [&str; 4] = ["precision", "recall", "f1", "auc"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum RankMode {
    /// Average each metric over datasets, then rank the averages.
    #[default]
    AverageThenRank,
    /// Rank on every dataset, then average the ranks.
    RankThenAverage,
}

impl FromStr for RankMode {
    type Err = SpinexError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "avg-then-rank" => Ok(RankMode::AverageThenRank),
            "rank-then-avg" => Ok(RankMode::RankThenAverage),
            other => Err(SpinexError::argument(format!(
                "unknown rank mode {other:?}; expected avg-then-rank or rank-then-avg"
            ))),
        }
    }
}

impl fmt::Display for RankMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankMode::AverageThenRank => "avg-then-rank",
            RankMode::RankThenAverage => "rank-then-avg",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankRow {
    pub algorithm: String,
    /// Mean precision, recall, F1 and AUC over successful datasets
    /// (NaN when an algorithm has no value for a metric).
    pub averages: [f64; 4],
    pub ranks: [f64; 4],
    pub rank_sum: f64,
    /// 1-based position after sorting by `rank_sum`.
    pub overall: usize,
}

/// Rows in overall order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankTable {
    pub mode: RankMode,
    pub rows: Vec<RankRow>,
}

/// Ranks with 1 for the largest value; tied values share the mean of the
/// positions they occupy. NaN ranks after every number.
pub fn rank_descending(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    let key = |i: usize| if values[i].is_nan() { f64::NEG_INFINITY } else { values[i] };
    let same = |a: usize, b: usize| {
        (values[a].is_nan() && values[b].is_nan()) || values[a] == values[b]
    };
    order.sort_by(|&a, &b| {
        values[a]
            .is_nan()
            .cmp(&values[b].is_nan())
            .then(key(b).total_cmp(&key(a)))
    });
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && same(order[start], order[end]) {
            end += 1;
        }
        // positions start+1 ..= end
        let mean = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = mean;
        }
        start = end;
    }
    ranks
}

fn mean_of(values: &[f64]) -> f64 {
    if values.is_empty() {
        f64::NAN
    } else {
        exact_sum(values.iter().copied()) / values.len() as f64
    }
}

pub fn rank_algorithms(table: &MetricTable, mode: RankMode) -> Result<RankTable> {
    let mut by_alg: BTreeMap<&str, BTreeMap<&str, [Option<f64>; 4]>> = BTreeMap::new();
    for ((alg, ds), entry) in &table.entries {
        if entry.values().iter().any(Option::is_some) {
            by_alg.entry(alg).or_default().insert(ds, entry.values());
        }
    }
    if by_alg.len() < 2 {
        return Err(SpinexError::Aggregation(format!(
            "need at least 2 algorithms with results, found {}",
            by_alg.len()
        )));
    }
    let shared = by_alg
        .values()
        .map(|m| m.keys().copied().collect::<BTreeSet<_>>())
        .reduce(|a, b| a.intersection(&b).copied().collect())
        .unwrap_or_default();
    if shared.is_empty() {
        return Err(SpinexError::Aggregation(
            "algorithms share no dataset with results".into(),
        ));
    }

    let algorithms: Vec<&str> = by_alg.keys().copied().collect();
    let averages: Vec<[f64; 4]> = algorithms
        .iter()
        .map(|alg| {
            std::array::from_fn(|k| {
                let vals: Vec<f64> = by_alg[alg].values().filter_map(|v| v[k]).collect();
                mean_of(&vals)
            })
        })
        .collect();

    let mut ranks = vec![[0.0; 4]; algorithms.len()];
    match mode {
        RankMode::AverageThenRank => {
            for k in 0..4 {
                let column: Vec<f64> = averages.iter().map(|a| a[k]).collect();
                for (r, rank) in ranks.iter_mut().zip(rank_descending(&column)) {
                    r[k] = rank;
                }
            }
        }
        RankMode::RankThenAverage => {
            let datasets: BTreeSet<&str> =
                by_alg.values().flat_map(|m| m.keys().copied()).collect();
            let mut collected = vec![<[Vec<f64>; 4]>::default(); algorithms.len()];
            for ds in datasets {
                for k in 0..4 {
                    let present: Vec<(usize, f64)> = algorithms
                        .iter()
                        .enumerate()
                        .filter_map(|(a, alg)| by_alg[alg].get(ds).and_then(|v| v[k]).map(|x| (a, x)))
                        .collect();
                    let values: Vec<f64> = present.iter().map(|p| p.1).collect();
                    for (&(a, _), rank) in present.iter().zip(rank_descending(&values)) {
                        collected[a][k].push(rank);
                    }
                }
            }
            for (r, c) in ranks.iter_mut().zip(&collected) {
                for k in 0..4 {
                    // never ranked on this metric: behind everyone
                    r[k] = if c[k].is_empty() {
                        algorithms.len() as f64
                    } else {
                        mean_of(&c[k])
                    };
                }
            }
        }
    }

    let mut rows: Vec<RankRow> = algorithms
        .iter()
        .zip(averages)
        .zip(ranks)
        .map(|((alg, averages), ranks)| RankRow {
            algorithm: (*alg).to_owned(),
            averages,
            ranks,
            rank_sum: ranks.iter().sum(),
            overall: 0,
        })
        .collect();
    rows.sort_by(|a, b| {
        a.rank_sum
            .total_cmp(&b.rank_sum)
            .then(a.ranks[0].total_cmp(&b.ranks[0]))
            .then(a.algorithm.cmp(&b.algorithm))
    });
    for (i, row) in rows.iter_mut().enumerate() {
        row.overall = i + 1;
    }
    Ok(RankTable { mode, rows })
}

impl RankTable {
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record([
            "algorithm",
            "avg_precision",
            "avg_recall",
            "avg_f1",
            "avg_auc",
            "rank_p",
            "rank_r",
            "rank_f1",
            "rank_auc",
            "rank_sum",
            "overall",
        ])?;
        for row in &self.rows {
            let mut record = vec![row.algorithm.clone()];
            record.extend(row.averages.iter().map(|v| if v.is_nan() { String::new() } else { v.to_string() }));
            record.extend(row.ranks.iter().map(f64::to_string));
            record.push(row.rank_sum.to_string());
            record.push(row.overall.to_string());
            w.write_record(&record)?;
        }
        w.flush().map_err(|e| SpinexError::io("<csv>", e))?;
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| SpinexError::io(path, e))?;
        self.write_csv(file)
    }

    pub fn row(&self, algorithm: &str) -> Option<&RankRow> {
        self.rows.iter().find(|r| r.algorithm == algorithm)
    }
}
