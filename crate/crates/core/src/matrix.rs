//! Dense article × feature matrix and its CSV form.
//!
//! CSV layout: header `id,<feature columns...>,label`; one row per article;
//! empty label cell for unlabeled rows. Floats are written in shortest
//! round-trip form, so a write/read cycle is lossless.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::corpus::QualityClass;

#[derive(Debug, thiserror::Error)]
pub enum MatrixError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("non-finite value in column {column:?} (row {row:?})")]
    NonFinite { row: String, column: String },
    #[error("unknown column {0:?}")]
    UnknownColumn(String),
    #[error("row {row} has {got} values, expected {expected}")]
    RowWidth { row: usize, got: usize, expected: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    pub ids: Vec<String>,
    pub columns: Vec<String>,
    /// Row-major values, `ids.len() * columns.len()` of them.
    pub values: Vec<f64>,
    pub labels: Vec<Option<QualityClass>>,
}

impl FeatureMatrix {
    pub fn new(columns: Vec<String>) -> Self {
        FeatureMatrix { columns, ..Default::default() }
    }

    pub fn push_row(&mut self, id: String, values: &[f64], label: Option<QualityClass>) -> Result<(), MatrixError> {
        if values.len() != self.columns.len() {
            return Err(MatrixError::RowWidth { row: self.ids.len(), got: values.len(), expected: self.columns.len() });
        }
        self.ids.push(id);
        self.values.extend_from_slice(values);
        self.labels.push(label);
        Ok(())
    }

    pub fn n_rows(&self) -> usize {
        self.ids.len()
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let w = self.columns.len();
        &self.values[i * w..(i + 1) * w]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        (0..self.n_rows()).map(move |i| self.row(i))
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.columns.len() + col]
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn is_labeled(&self) -> bool {
        self.labels.iter().all(Option::is_some)
    }

    /// Labels of all rows, or the id of the first unlabeled row.
    pub fn require_labels(&self) -> Result<Vec<QualityClass>, String> {
        self.labels
            .iter()
            .zip(&self.ids)
            .map(|(l, id)| l.ok_or_else(|| id.clone()))
            .collect()
    }

    /// Fails on the first NaN or infinite value.
    pub fn check_finite(&self) -> Result<(), MatrixError> {
        for (i, row) in self.rows().enumerate() {
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(MatrixError::NonFinite { row: self.ids[i].clone(), column: self.columns[j].clone() });
            }
        }
        Ok(())
    }

    /// Keeps the named columns, in the order given.
    pub fn select_columns(&self, names: &[&str]) -> Result<FeatureMatrix, MatrixError> {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| self.column_index(n).ok_or_else(|| MatrixError::UnknownColumn(n.to_string())))
            .collect::<Result<_, _>>()?;
        let mut values = Vec::with_capacity(self.n_rows() * idx.len());
        for row in self.rows() {
            values.extend(idx.iter().map(|&j| row[j]));
        }
        Ok(FeatureMatrix {
            ids: self.ids.clone(),
            columns: names.iter().map(|s| s.to_string()).collect(),
            values,
            labels: self.labels.clone(),
        })
    }

    /// Keeps the given rows, in the order given.
    pub fn select_rows(&self, rows: &[usize]) -> FeatureMatrix {
        let mut out = FeatureMatrix::new(self.columns.clone());
        for &r in rows {
            out.ids.push(self.ids[r].clone());
            out.values.extend_from_slice(self.row(r));
            out.labels.push(self.labels[r]);
        }
        out
    }

    /// Appends the columns of `other`, whose rows must be the same ids in the
    /// same order.
    pub fn hconcat(&self, other: &FeatureMatrix) -> Result<FeatureMatrix, MatrixError> {
        if self.ids != other.ids {
            return Err(MatrixError::Malformed { line: 0, message: "row ids differ between matrices".into() });
        }
        let mut out = FeatureMatrix::new(self.columns.iter().chain(&other.columns).cloned().collect());
        out.ids = self.ids.clone();
        out.labels = self.labels.clone();
        for i in 0..self.n_rows() {
            out.values.extend_from_slice(self.row(i));
            out.values.extend_from_slice(other.row(i));
        }
        Ok(out)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), MatrixError> {
        let mut w = csv::Writer::from_writer(out);
        let header = std::iter::once("id").chain(self.columns.iter().map(String::as_str)).chain(["label"]);
        w.write_record(header)?;
        let mut record: Vec<String> = Vec::with_capacity(self.n_cols() + 2);
        for (i, row) in self.rows().enumerate() {
            record.clear();
            record.push(self.ids[i].clone());
            record.extend(row.iter().map(|v| v.to_string()));
            record.push(self.labels[i].map(|l| l.label().to_string()).unwrap_or_default());
            w.write_record(&record)?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<FeatureMatrix, MatrixError> {
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
        let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
        if header.len() < 2 || header[0] != "id" || header[header.len() - 1] != "label" {
            return Err(MatrixError::Malformed { line: 1, message: "header must be id,<features...>,label".into() });
        }
        let columns = header[1..header.len() - 1].to_vec();
        let mut m = FeatureMatrix::new(columns);
        for (i, rec) in r.records().enumerate() {
            let rec = rec?;
            let line = i + 2;
            if rec.len() != header.len() {
                return Err(MatrixError::Malformed {
                    line,
                    message: format!("{} fields, expected {}", rec.len(), header.len()),
                });
            }
            let id = rec[0].to_string();
            for (j, cell) in rec.iter().enumerate().take(header.len() - 1).skip(1) {
                let v: f64 = cell.trim().parse().map_err(|_| MatrixError::Malformed {
                    line,
                    message: format!("column {:?}: not a number: {cell:?}", header[j]),
                })?;
                if !v.is_finite() {
                    return Err(MatrixError::NonFinite { row: id.clone(), column: header[j].clone() });
                }
                m.values.push(v);
            }
            let label_cell = rec[header.len() - 1].trim();
            let label = if label_cell.is_empty() {
                None
            } else {
                Some(label_cell.parse::<QualityClass>().map_err(|e| MatrixError::Malformed { line, message: e.to_string() })?)
            };
            m.ids.push(id);
            m.labels.push(label);
        }
        Ok(m)
    }

    pub fn write_csv_file(&self, path: &Path) -> Result<(), MatrixError> {
        let f = std::fs::File::create(path).map_err(|source| MatrixError::Io { path: path.to_path_buf(), source })?;
        self.write_csv(std::io::BufWriter::new(f))
    }

    pub fn read_csv_file(path: &Path) -> Result<FeatureMatrix, MatrixError> {
        let f = std::fs::File::open(path).map_err(|source| MatrixError::Io { path: path.to_path_buf(), source })?;
        Self::read_csv(std::io::BufReader::new(f))
    }
}
