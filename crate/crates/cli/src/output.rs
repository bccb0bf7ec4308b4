//! Report rendering: stable JSON (top-level command/params/results/seed)
//! and a CSV mirror of the results.

use serde_json::{Map, Value};

use crate::error::CliError;

pub struct CommandOutput {
    pub command: &'static str,
    pub params: Value,
    pub results: Value,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(CliError::Usage(format!(
                "unknown output format {other:?}, expected json or csv"
            ))),
        }
    }
}

impl CommandOutput {
    pub fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        match format {
            OutputFormat::Json => Ok(self.to_json()),
            OutputFormat::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut top = Map::new();
        top.insert("command".into(), Value::String(self.command.into()));
        top.insert("params".into(), self.params.clone());
        top.insert("results".into(), self.results.clone());
        top.insert("seed".into(), Value::from(self.seed));
        let mut s = serde_json::to_string_pretty(&Value::Object(top))
            .expect("report serialization cannot fail");
        s.push('\n');
        s
    }

    /// CSV mirror of the results: one row per entry for array results, a
    /// single row for scalar results; a header row always comes first.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        match &self.results {
            Value::Array(rows) => {
                let keys = ["name", "h_ci", "p_value", "selected"];
                let present: Vec<&str> = keys
                    .iter()
                    .filter(|k| rows.iter().any(|r| r.get(**k).is_some()))
                    .copied()
                    .collect();
                writer.write_record(&present).map_err(csv_fail)?;
                for row in rows {
                    let record: Vec<String> = present
                        .iter()
                        .map(|k| row.get(k).map(render_cell).unwrap_or_default())
                        .collect();
                    writer.write_record(&record).map_err(csv_fail)?;
                }
            }
            Value::Object(fields) => {
                let header: Vec<&String> = fields.keys().collect();
                writer.write_record(&header).map_err(csv_fail)?;
                let record: Vec<String> = fields.values().map(render_cell).collect();
                writer.write_record(&record).map_err(csv_fail)?;
            }
            other => return Err(CliError::Data(format!("cannot render {other:?} as CSV"))),
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| CliError::Data(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Data(e.to_string()))
    }
}

fn render_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(render_cell).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

fn csv_fail(e: csv::Error) -> CliError {
    CliError::Data(format!("csv rendering failed: {e}"))
}
