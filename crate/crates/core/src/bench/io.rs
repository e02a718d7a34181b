//! CSV datasets: a mandatory header row, numeric feature columns and an
//! optional `label` column holding 0/1.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Result, SpinexError};
use crate::matrix::FeatureMatrix;

pub const DEFAULT_LABEL_COLUMN: &str = "label";

/// A dataset as used by the benchmark: name, features and optional labels.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedDataset {
    pub name: String,
    pub matrix: FeatureMatrix,
    pub labels: Option<Vec<u8>>,
}

/// Reads a dataset. With `label_column = None` a column named `label` is
/// used when present; naming a column that does not exist is an error.
pub fn load_csv_dataset(
    path: impl AsRef<Path>,
    label_column: Option<&str>,
) -> Result<(FeatureMatrix, Option<Vec<u8>>)> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| SpinexError::io(path, e))?;
    read_csv_dataset(file, path, label_column)
}

pub fn read_csv_dataset<R: Read>(
    reader: R,
    path: &Path,
    label_column: Option<&str>,
) -> Result<(FeatureMatrix, Option<Vec<u8>>)> {
    let parse_err = |line: u64, message: String| SpinexError::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if headers.is_empty() || headers.iter().all(String::is_empty) {
        return Err(parse_err(1, "missing header row".into()));
    }
    let label_idx = match label_column {
        Some(name) => Some(
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| parse_err(1, format!("no label column named {name:?}")))?,
        ),
        None => headers.iter().position(|h| h == DEFAULT_LABEL_COLUMN),
    };
    let names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|&(j, _)| Some(j) != label_idx)
        .map(|(_, h)| h.clone())
        .collect();
    if names.is_empty() {
        return Err(parse_err(1, "no feature columns".into()));
    }

    let mut values = Vec::new();
    let mut labels = Vec::new();
    let mut n_rows = 0;
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != headers.len() {
            return Err(parse_err(
                line,
                format!("expected {} fields, found {}", headers.len(), record.len()),
            ));
        }
        for (j, field) in record.iter().enumerate() {
            let v: f64 = field.parse().map_err(|_| {
                parse_err(line, format!("non-numeric value {field:?} in column {:?}", headers[j]))
            })?;
            if Some(j) == label_idx {
                let label = match v {
                    0.0 => 0,
                    1.0 => 1,
                    _ => return Err(parse_err(line, format!("label {field:?} is not 0 or 1"))),
                };
                labels.push(label);
            } else {
                if !v.is_finite() {
                    return Err(parse_err(
                        line,
                        format!("non-finite value {field:?} in column {:?}", headers[j]),
                    ));
                }
                values.push(v);
            }
        }
        n_rows += 1;
    }
    if n_rows == 0 {
        return Err(parse_err(1, "no data rows".into()));
    }
    let n_cols = names.len();
    let matrix = FeatureMatrix::from_flat(n_rows, n_cols, values, Some(names))?;
    Ok((matrix, label_idx.map(|_| labels)))
}

pub fn write_csv_dataset(
    path: impl AsRef<Path>,
    m: &FeatureMatrix,
    labels: Option<&[u8]>,
) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| SpinexError::io(path, e))?;
    write_dataset(file, m, labels)
}

/// Values use the shortest representation that parses back to the same
/// `f64`.
pub fn write_dataset<W: Write>(writer: W, m: &FeatureMatrix, labels: Option<&[u8]>) -> Result<()> {
    if let Some(l) = labels {
        if l.len() != m.n_rows() {
            return Err(SpinexError::argument(format!(
                "{} labels for {} rows",
                l.len(),
                m.n_rows()
            )));
        }
    }
    let mut w = csv::Writer::from_writer(writer);
    let mut header: Vec<&str> = m.column_names().iter().map(String::as_str).collect();
    if labels.is_some() {
        header.push(DEFAULT_LABEL_COLUMN);
    }
    w.write_record(&header)?;
    for (i, row) in m.rows().enumerate() {
        let mut record: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        if let Some(l) = labels {
            record.push(l[i].to_string());
        }
        w.write_record(&record)?;
    }
    w.flush().map_err(|e| SpinexError::io("<csv>", e))?;
    Ok(())
}

/// Every `*.csv` file in `dir`, sorted by file name; the dataset name is the
/// file stem.
pub fn load_dataset_dir(dir: impl AsRef<Path>) -> Result<Vec<NamedDataset>> {
    let dir = dir.as_ref();
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| SpinexError::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let (matrix, labels) = load_csv_dataset(&p, None)?;
            let name = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok(NamedDataset {
                name,
                matrix,
                labels,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn read(text: &str, label: Option<&str>) -> Result<(FeatureMatrix, Option<Vec<u8>>)> {
        read_csv_dataset(Cursor::new(text), Path::new("test.csv"), label)
    }

    #[test]
    fn parses_features_and_labels() {
        let (m, labels) = read("a,b,label\n1,2,0\n3,4,1\n5,6,0\n", None).unwrap();
        assert_eq!((m.n_rows(), m.n_cols()), (3, 2));
        assert_eq!(m.column_names(), ["a", "b"]);
        assert_eq!(labels, Some(vec![0, 1, 0]));
    }

    #[test]
    fn labels_are_optional() {
        let (m, labels) = read("a,b\n1,2\n3,4\n5,6\n", None).unwrap();
        assert_eq!(m.n_cols(), 2);
        assert!(labels.is_none());
        let (m, labels) = read("y,a\n1,2\n0,4\n", Some("y")).unwrap();
        assert_eq!(m.column_names(), ["a"]);
        assert_eq!(labels, Some(vec![1, 0]));
        assert!(read("a,b\n1,2\n", Some("y")).is_err());
    }

    #[test]
    fn ragged_row_names_line() {
        let err = read("a,b\n1,2\n3\n", None).unwrap_err();
        match err {
            SpinexError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_cells() {
        assert!(matches!(read("a\nx\n", None), Err(SpinexError::Parse { line: 2, .. })));
        assert!(matches!(read("a,label\n1,2\n", None), Err(SpinexError::Parse { .. })));
        assert!(matches!(read("a\n", None), Err(SpinexError::Parse { .. })));
    }

    #[test]
    fn missing_file() {
        assert!(matches!(
            load_csv_dataset("/definitely/not/here.csv", None),
            Err(SpinexError::Io { .. })
        ));
    }
}
