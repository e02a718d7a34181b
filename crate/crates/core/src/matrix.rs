use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpinexError};
use crate::stats;

/// Dense row-major table of finite reals with named columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    n_rows: usize,
    n_cols: usize,
    values: Vec<f64>,
    column_names: Vec<String>,
}

/// Default column names `Feature1..FeatureN`.
pub fn default_column_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("Feature{i}")).collect()
}

impl FeatureMatrix {
    /// Validates a table of rows. Names default to `Feature1..FeatureN`.
    pub fn new(rows: Vec<Vec<f64>>, names: Option<Vec<String>>) -> Result<Self> {
        let n_rows = rows.len();
        if n_rows == 0 {
            return Err(SpinexError::Shape("matrix has no rows".into()));
        }
        let n_cols = rows[0].len();
        if n_cols == 0 {
            return Err(SpinexError::Shape("matrix has no columns".into()));
        }
        let mut values = Vec::with_capacity(n_rows * n_cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n_cols {
                return Err(SpinexError::Shape(format!(
                    "row {i} has {} columns, expected {n_cols}",
                    row.len()
                )));
            }
            values.extend(row);
        }
        Self::from_flat(n_rows, n_cols, values, names)
    }

    pub fn from_flat(
        n_rows: usize,
        n_cols: usize,
        values: Vec<f64>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 {
            return Err(SpinexError::Shape(format!(
                "matrix must be at least 1x1, got {n_rows}x{n_cols}"
            )));
        }
        if values.len() != n_rows * n_cols {
            return Err(SpinexError::Shape(format!(
                "{} values cannot fill a {n_rows}x{n_cols} matrix",
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(SpinexError::NonFinite {
                row: pos / n_cols,
                col: pos % n_cols,
                value: values[pos],
            });
        }
        let column_names = match names {
            Some(names) => {
                if names.len() != n_cols {
                    return Err(SpinexError::argument(format!(
                        "{} column names given for {n_cols} columns",
                        names.len()
                    )));
                }
                let mut seen = HashSet::new();
                if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
                    return Err(SpinexError::argument(format!(
                        "duplicate column name {dup:?}"
                    )));
                }
                names
            }
            None => default_column_names(n_cols),
        };
        Ok(Self {
            n_rows,
            n_cols,
            values,
            column_names,
        })
    }

    /// Builds a matrix from column vectors of equal length.
    pub fn from_columns(columns: Vec<Vec<f64>>, names: Option<Vec<String>>) -> Result<Self> {
        let n_cols = columns.len();
        let n_rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != n_rows) {
            return Err(SpinexError::Shape("columns differ in length".into()));
        }
        let mut values = vec![0.0; n_rows * n_cols];
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                values[i * n_cols + j] = *v;
            }
        }
        Self::from_flat(n_rows, n_cols, values, names)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.n_cols + col]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.n_cols)
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows().map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<f64>> {
        (0..self.n_cols).map(|j| self.column(j)).collect()
    }

    pub fn column_means(&self) -> Vec<f64> {
        (0..self.n_cols)
            .map(|j| stats::mean(&self.column(j)))
            .collect()
    }

    /// Appends the columns of `other` (same row count) on the right.
    pub fn hstack(&self, other: &FeatureMatrix) -> Result<FeatureMatrix> {
        if other.n_rows != self.n_rows {
            return Err(SpinexError::Shape(format!(
                "cannot append {} rows to {} rows",
                other.n_rows, self.n_rows
            )));
        }
        let n_cols = self.n_cols + other.n_cols;
        let mut values = Vec::with_capacity(self.n_rows * n_cols);
        for (a, b) in self.rows().zip(other.rows()) {
            values.extend_from_slice(a);
            values.extend_from_slice(b);
        }
        let mut names = self.column_names.clone();
        names.extend(other.column_names.iter().cloned());
        FeatureMatrix::from_flat(self.n_rows, n_cols, values, Some(names))
    }

    /// Returns a copy with the rows reordered so that row `i` of the result
    /// is row `order[i]` of `self`.
    pub fn select_rows(&self, order: &[usize]) -> FeatureMatrix {
        let mut values = Vec::with_capacity(order.len() * self.n_cols);
        for &i in order {
            values.extend_from_slice(self.row(i));
        }
        FeatureMatrix {
            n_rows: order.len(),
            n_cols: self.n_cols,
            values,
            column_names: self.column_names.clone(),
        }
    }

    /// Applies `f(flat_index, value)` to every entry; non-finite outputs are
    /// rejected.
    pub fn map_indexed(&self, f: impl Fn(usize, f64) -> f64) -> Result<FeatureMatrix> {
        FeatureMatrix::from_flat(
            self.n_rows,
            self.n_cols,
            self.values.iter().enumerate().map(|(i, &v)| f(i, v)).collect(),
            Some(self.column_names.clone()),
        )
    }

    /// Applies `f` to every entry; non-finite outputs are rejected.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<FeatureMatrix> {
        FeatureMatrix::from_flat(
            self.n_rows,
            self.n_cols,
            self.values.iter().map(|&v| f(v)).collect(),
            Some(self.column_names.clone()),
        )
    }
}
