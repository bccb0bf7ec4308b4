//! CSV ingestion with categorical encoding.
//!
//! Numeric columns pass through unchanged. A column containing any
//! non-numeric token is treated as categorical and integer-encoded by
//! first appearance (1-based), with the label order returned in the
//! codebook. Missing (empty) cells are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use centropy_core::SampleMatrix;

use crate::error::CliError;

#[derive(Debug, Clone)]
pub struct IngestedTable {
    pub matrix: SampleMatrix,
    /// Per categorical column: labels in first-appearance order, so the
    /// code of `labels[i]` is `i + 1`.
    pub codebook: BTreeMap<String, Vec<String>>,
}

pub fn ingest(path: &Path) -> Result<IngestedTable, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(false)
        .from_path(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;

    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| csv_error(path, e))?
        .iter()
        .map(str::to_string)
        .collect();
    if headers.is_empty() {
        return Err(CliError::Data(format!("{}: no header row", path.display())));
    }

    let mut rows: Vec<csv::StringRecord> = Vec::new();
    for record in reader.records() {
        rows.push(record.map_err(|e| csv_error(path, e))?);
    }
    if rows.is_empty() {
        return Err(CliError::Data(format!(
            "{}: no data rows under the header",
            path.display()
        )));
    }

    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(headers.len());
    let mut codebook = BTreeMap::new();
    for (j, name) in headers.iter().enumerate() {
        let cells: Vec<&str> = rows.iter().map(|r| &r[j]).collect();
        if let Some(i) = cells.iter().position(|c| c.is_empty()) {
            return Err(CliError::Data(format!(
                "missing value in column {name:?} (data row {})",
                i + 1
            )));
        }
        let parsed: Option<Vec<f64>> = cells.iter().map(|c| c.parse::<f64>().ok()).collect();
        match parsed {
            Some(values) => columns.push(values),
            None => {
                // categorical: integer codes by first appearance
                let mut labels: Vec<String> = Vec::new();
                let mut values = Vec::with_capacity(cells.len());
                for cell in cells {
                    let code = match labels.iter().position(|l| l == cell) {
                        Some(i) => i + 1,
                        None => {
                            labels.push(cell.to_string());
                            labels.len()
                        }
                    };
                    values.push(code as f64);
                }
                codebook.insert(name.clone(), labels);
                columns.push(values);
            }
        }
    }

    let matrix = SampleMatrix::from_columns(headers, columns)?;
    Ok(IngestedTable { matrix, codebook })
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    let line = e
        .position()
        .map(|p| format!(" (line {})", p.line()))
        .unwrap_or_default();
    CliError::Data(format!("{}: {e}{line}", path.display()))
}
