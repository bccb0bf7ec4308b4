//! Sample containers shared by the estimators and samplers.

use crate::error::{Error, Result};

/// N observations of d named real-valued variables, stored row-major.
///
/// Construction validates the container invariants once so downstream code
/// can rely on them: every entry finite, column names unique, N >= 1, d >= 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMatrix {
    names: Vec<String>,
    values: Vec<f64>,
    n_rows: usize,
}

impl SampleMatrix {
    /// Build a matrix from per-column vectors.
    pub fn from_columns<N: Into<String>>(names: Vec<N>, columns: Vec<Vec<f64>>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != columns.len() {
            return Err(Error::Shape(format!(
                "{} column names for {} columns",
                names.len(),
                columns.len()
            )));
        }
        if columns.is_empty() {
            return Err(Error::Dimension(
                "a sample needs at least one column".into(),
            ));
        }
        let n_rows = columns[0].len();
        if columns.iter().any(|c| c.len() != n_rows) {
            return Err(Error::Shape("columns have unequal lengths".into()));
        }
        if n_rows == 0 {
            return Err(Error::InvalidSample(
                "a sample needs at least one row".into(),
            ));
        }
        for (j, name) in names.iter().enumerate() {
            if names[..j].contains(name) {
                return Err(Error::Schema(format!("duplicate column name {name:?}")));
            }
        }
        let mut values = vec![0.0; n_rows * columns.len()];
        for (j, col) in columns.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::InvalidData(format!(
                        "non-finite entry {v} in column {:?} (row {i})",
                        names[j]
                    )));
                }
                values[i * columns.len() + j] = v;
            }
        }
        Ok(SampleMatrix {
            names,
            values,
            n_rows,
        })
    }

    /// Build a matrix from observation rows.
    pub fn from_rows<N: Into<String>>(names: Vec<N>, rows: &[Vec<f64>]) -> Result<Self> {
        let d = names.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::Shape(
                "row length does not match the column count".into(),
            ));
        }
        let mut columns: Vec<Vec<f64>> = (0..d).map(|_| Vec::with_capacity(rows.len())).collect();
        for row in rows {
            for (j, &v) in row.iter().enumerate() {
                columns[j].push(v);
            }
        }
        Self::from_columns(names, columns)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.names.len()
    }

    pub fn column_names(&self) -> &[String] {
        &self.names
    }

    /// Row-major backing storage, length `n_rows * n_cols`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let d = self.n_cols();
        &self.values[i * d..(i + 1) * d]
    }

    /// Copy of column `j`.
    pub fn column(&self, j: usize) -> Vec<f64> {
        let d = self.n_cols();
        (0..self.n_rows).map(|i| self.values[i * d + j]).collect()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn column_by_name(&self, name: &str) -> Option<Vec<f64>> {
        self.column_index(name).map(|j| self.column(j))
    }

    /// New matrix restricted to the named columns, in the given order.
    pub fn select_columns(&self, names: &[String]) -> Result<Self> {
        let mut columns = Vec::with_capacity(names.len());
        for name in names {
            match self.column_by_name(name) {
                Some(col) => columns.push(col),
                None => return Err(Error::Schema(format!("unknown column {name:?}"))),
            }
        }
        Self::from_columns(names.to_vec(), columns)
    }
}

/// Rank-normalized copy of a [`SampleMatrix`]: every column is exactly a
/// permutation of {1/N, 2/N, ..., N/N}. Produced by
/// [`rank_transform`](crate::estimator::rank_transform).
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoSample {
    pub(crate) values: Vec<f64>,
    pub(crate) n_rows: usize,
    pub(crate) n_cols: usize,
}

impl PseudoSample {
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    /// Row-major point set, length `n_rows * n_cols`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n_rows)
            .map(|i| self.values[i * self.n_cols + j])
            .collect()
    }
}
