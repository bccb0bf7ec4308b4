//! Command implementations. Each function is a thin wrapper over the
//! library: ingest/validate, call the estimator, and package the result,
//! so CLI output equals the corresponding library call exactly.

use serde_json::{json, Map, Value};

use centropy_core::{
    ci_measure, copula_entropy, default_perm_seed, parameter_record, run_experiment,
    select_features, CiReport, DomainDataset, EstimatorConfig, ExperimentId, ExperimentSpec,
    SelectionCriterion,
};

use crate::error::CliError;
use crate::ingest::IngestedTable;
use crate::output::CommandOutput;

fn column(table: &IngestedTable, name: &str) -> Result<Vec<f64>, CliError> {
    table
        .matrix
        .column_by_name(name)
        .ok_or_else(|| CliError::Usage(format!("unknown column {name:?}")))
}

/// Attach the categorical code map to the params object when the input had
/// any encoded columns, so reports stay interpretable on their own.
fn with_codebook(mut params: Value, table: &IngestedTable) -> Value {
    if !table.codebook.is_empty() {
        if let Value::Object(map) = &mut params {
            map.insert("codebook".into(), json!(table.codebook));
        }
    }
    params
}

pub fn cmd_ce(
    table: &IngestedTable,
    cols: &[String],
    k: usize,
    seed: u64,
    input: &str,
) -> Result<CommandOutput, CliError> {
    if cols.len() < 2 {
        return Err(CliError::Usage(format!(
            "--cols needs at least two columns, got {}",
            cols.len()
        )));
    }
    for (i, c) in cols.iter().enumerate() {
        if cols[..i].contains(c) {
            return Err(CliError::Usage(format!("column {c:?} listed twice")));
        }
        if table.matrix.column_index(c).is_none() {
            return Err(CliError::Usage(format!("unknown column {c:?}")));
        }
    }
    let selected = table.matrix.select_columns(cols)?;
    let h_c = copula_entropy(&selected, &EstimatorConfig::new(k, seed))?;
    Ok(CommandOutput {
        command: "ce",
        params: with_codebook(json!({ "input": input, "cols": cols, "k": k }), table),
        results: json!({ "columns": cols, "h_c": h_c }),
        seed,
    })
}

pub fn cmd_ci(
    table: &IngestedTable,
    x: &str,
    y: &str,
    z: &str,
    k: usize,
    seed: u64,
    input: &str,
) -> Result<CommandOutput, CliError> {
    let xs = column(table, x)?;
    let ys = column(table, y)?;
    let zs = column(table, z)?;
    let h_ci = ci_measure(&xs, &ys, &zs, &EstimatorConfig::new(k, seed))?;
    Ok(CommandOutput {
        command: "ci",
        params: with_codebook(
            json!({ "input": input, "x": x, "y": y, "z": z, "k": k }),
            table,
        ),
        results: json!({ "x": x, "y": y, "z": z, "h_ci": h_ci }),
        seed,
    })
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_cda(
    table: &IngestedTable,
    context_col: &str,
    outcome_col: &str,
    k: usize,
    seed: u64,
    perms: usize,
    alpha: Option<f64>,
    input: &str,
) -> Result<CommandOutput, CliError> {
    if context_col == outcome_col {
        return Err(CliError::Usage(
            "--context and --outcome must name different columns".into(),
        ));
    }
    let context = column(table, context_col)?;
    let outcome = column(table, outcome_col)?;
    let feature_names: Vec<String> = table
        .matrix
        .column_names()
        .iter()
        .filter(|n| n.as_str() != context_col && n.as_str() != outcome_col)
        .cloned()
        .collect();
    if feature_names.is_empty() {
        return Err(CliError::Usage(
            "no feature columns besides context and outcome".into(),
        ));
    }
    let distinct = {
        let mut seen: Vec<f64> = Vec::new();
        for &c in &context {
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        seen.len()
    };
    if distinct < 2 {
        return Err(CliError::NumericConfig(format!(
            "context column {context_col:?} has a single distinct value; need >= 2 domains"
        )));
    }
    if let Some(a) = alpha {
        if perms == 0 {
            return Err(CliError::NumericConfig(
                "--alpha requires permutation p-values; set --perms > 0".into(),
            ));
        }
        if !(0.0..=1.0).contains(&a) {
            return Err(CliError::NumericConfig(format!(
                "--alpha must lie in [0, 1], got {a}"
            )));
        }
    }
    // when p-values are computed, selection defaults to alpha = 0.05
    let alpha = alpha.or(if perms > 0 { Some(0.05) } else { None });

    let features = table.matrix.select_columns(&feature_names)?;
    // integer-valued contexts are grouped into domains; anything else is
    // kept verbatim as a continuous context
    let ds = if context.iter().all(|c| c.fract() == 0.0) {
        DomainDataset::from_pooled(features, outcome, context)?
    } else {
        DomainDataset::with_raw_context(features, outcome, context)?
    };
    let cfg = EstimatorConfig::new(k, seed);
    let report = if perms > 0 {
        centropy_core::permutation_pvalues(&ds, &cfg, perms, default_perm_seed(seed))?
    } else {
        centropy_core::ci_strengths(&ds, &cfg)?
    };

    let selected = match alpha {
        Some(a) => Some(select_features(&report, SelectionCriterion::Alpha(a))?),
        None => None,
    };
    let rows: Vec<Value> = report
        .sorted_by_strength()
        .into_iter()
        .map(|e| {
            let mut row = Map::new();
            row.insert("name".into(), Value::String(e.name.clone()));
            row.insert("h_ci".into(), json!(e.h_ci));
            if let Some(p) = e.p_value {
                row.insert("p_value".into(), json!(p));
            }
            if let Some(sel) = &selected {
                row.insert("selected".into(), Value::Bool(sel.contains(&e.name)));
            }
            Value::Object(row)
        })
        .collect();

    let mut params = Map::new();
    params.insert("input".into(), json!(input));
    params.insert("context".into(), json!(context_col));
    params.insert("outcome".into(), json!(outcome_col));
    params.insert("k".into(), json!(k));
    params.insert("perms".into(), json!(perms));
    if let Some(a) = alpha {
        params.insert("alpha".into(), json!(a));
    }
    Ok(CommandOutput {
        command: "cda",
        params: with_codebook(Value::Object(params), table),
        results: Value::Array(rows),
        seed,
    })
}

pub fn cmd_sim(id: &str, k: usize, seed: u64, perms: usize) -> Result<CommandOutput, CliError> {
    let id: ExperimentId = id
        .parse()
        .map_err(|e: centropy_core::Error| CliError::Usage(e.to_string()))?;
    let spec = ExperimentSpec {
        id,
        master_seed: seed,
        cfg: EstimatorConfig::new(k, seed),
        permutations: perms,
    };
    let report = run_experiment(&spec)?;
    let mut parameters = Map::new();
    for (key, value) in parameter_record(id) {
        parameters.insert(key.into(), json!(value));
    }
    Ok(CommandOutput {
        command: "sim",
        params: json!({
            "id": id,
            "k": k,
            "perms": perms,
            "parameters": Value::Object(parameters),
        }),
        results: report_rows(&report),
        seed,
    })
}

pub fn report_rows(report: &CiReport) -> Value {
    Value::Array(
        report
            .entries
            .iter()
            .map(|e| {
                let mut row = Map::new();
                row.insert("name".into(), Value::String(e.name.clone()));
                row.insert("h_ci".into(), json!(e.h_ci));
                if let Some(p) = e.p_value {
                    row.insert("p_value".into(), json!(p));
                }
                Value::Object(row)
            })
            .collect(),
    )
}
