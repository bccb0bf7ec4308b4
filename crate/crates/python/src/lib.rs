//! Python bindings: the estimators, samplers, and pipelines exposed as a
//! `centropy` extension module. Data crosses the boundary as plain lists
//! (rows of floats), so no array dependency is needed on either side.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use centropy_core as core;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn matrix_from_rows(rows: Vec<Vec<f64>>) -> PyResult<core::SampleMatrix> {
    let d = rows.first().map(Vec::len).unwrap_or(0);
    let names: Vec<String> = (0..d).map(|j| format!("c{j}")).collect();
    core::SampleMatrix::from_rows(names, &rows).map_err(err)
}

fn named_matrix(names: Vec<String>, rows: Vec<Vec<f64>>) -> PyResult<core::SampleMatrix> {
    core::SampleMatrix::from_rows(names, &rows).map_err(err)
}

fn pairs(m: &core::SampleMatrix) -> Vec<(f64, f64)> {
    (0..m.n_rows())
        .map(|i| {
            let row = m.row(i);
            (row[0], row[1])
        })
        .collect()
}

/// Normalized ranks of each column (the empirical copula sample).
#[pyfunction]
#[pyo3(signature = (rows, tie_seed = 0))]
fn rank_transform(rows: Vec<Vec<f64>>, tie_seed: u64) -> PyResult<Vec<Vec<f64>>> {
    let m = matrix_from_rows(rows)?;
    let pseudo = core::rank_transform(&m, tie_seed).map_err(err)?;
    Ok((0..pseudo.n_rows())
        .map(|i| pseudo.row(i).to_vec())
        .collect())
}

/// k-NN differential entropy of a point set, in nats.
#[pyfunction]
#[pyo3(signature = (rows, k = 3))]
fn knn_entropy(rows: Vec<Vec<f64>>, k: usize) -> PyResult<f64> {
    core::knn_entropy(&matrix_from_rows(rows)?, k).map_err(err)
}

/// Copula entropy of the columns, in nats (<= 0 in theory; 0 iff
/// independent).
#[pyfunction]
#[pyo3(signature = (rows, k = 3, tie_seed = 0))]
fn copula_entropy(rows: Vec<Vec<f64>>, k: usize, tie_seed: u64) -> PyResult<f64> {
    core::copula_entropy(
        &matrix_from_rows(rows)?,
        &core::EstimatorConfig::new(k, tie_seed),
    )
    .map_err(err)
}

/// Conditional-dependence strength of (x, y) given scalar z, in nats
/// (conditional mutual information; ~0 iff conditionally independent).
#[pyfunction]
#[pyo3(signature = (x, y, z, k = 3, tie_seed = 0))]
fn ci_measure(x: Vec<f64>, y: Vec<f64>, z: Vec<f64>, k: usize, tie_seed: u64) -> PyResult<f64> {
    core::ci_measure(&x, &y, &z, &core::EstimatorConfig::new(k, tie_seed)).map_err(err)
}

/// Transfer entropy from x to y at the given lag, in nats.
#[pyfunction]
#[pyo3(signature = (x, y, lag = 1, k = 3, tie_seed = 0))]
fn transfer_entropy(
    x: Vec<f64>,
    y: Vec<f64>,
    lag: usize,
    k: usize,
    tie_seed: u64,
) -> PyResult<f64> {
    core::transfer_entropy(&x, &y, lag, &core::EstimatorConfig::new(k, tie_seed)).map_err(err)
}

/// Draws from a bivariate Gaussian with unit variances and correlation rho,
/// as a list of (x1, x2) tuples.
#[pyfunction]
#[pyo3(signature = (n, rho, mean = (0.0, 0.0), seed = 0))]
fn sample_bivariate_gaussian(
    n: usize,
    rho: f64,
    mean: (f64, f64),
    seed: u64,
) -> PyResult<Vec<(f64, f64)>> {
    Ok(pairs(
        &core::sample_bivariate_gaussian(n, mean, rho, seed).map_err(err)?,
    ))
}

/// Draws from the bivariate Clayton copula (theta > 0), on the unit square.
#[pyfunction]
#[pyo3(signature = (n, theta, seed = 0))]
fn sample_clayton(n: usize, theta: f64, seed: u64) -> PyResult<Vec<(f64, f64)>> {
    Ok(pairs(&core::sample_clayton(n, theta, seed).map_err(err)?))
}

/// Draws from the bivariate Frank copula (theta != 0), on the unit square.
#[pyfunction]
#[pyo3(signature = (n, theta, seed = 0))]
fn sample_frank(n: usize, theta: f64, seed: u64) -> PyResult<Vec<(f64, f64)>> {
    Ok(pairs(&core::sample_frank(n, theta, seed).map_err(err)?))
}

/// Standard bivariate normal density at (x1, x2) with correlation rho.
#[pyfunction]
fn gaussian_pdf2(x1: f64, x2: f64, rho: f64) -> PyResult<f64> {
    core::gaussian_pdf2(x1, x2, rho).map_err(err)
}

/// Clayton copula CDF at (u1, u2) with parameter theta > 0.
#[pyfunction]
fn clayton_cdf(u1: f64, u2: f64, theta: f64) -> PyResult<f64> {
    core::clayton_cdf(u1, u2, theta).map_err(err)
}

/// Frank copula CDF at (u1, u2); |theta| < 1e-8 returns the independence
/// limit u1*u2.
#[pyfunction]
fn frank_cdf(u1: f64, u2: f64, theta: f64) -> PyResult<f64> {
    core::frank_cdf(u1, u2, theta).map_err(err)
}

/// Per-feature conditional-dependence strengths with the outcome given the
/// context, as (name, h_ci) tuples in column order. `rows` holds the
/// feature matrix (one list per observation), `names` its column names.
#[pyfunction]
#[pyo3(signature = (rows, names, outcome, context, k = 3, tie_seed = 0))]
fn ci_strengths(
    rows: Vec<Vec<f64>>,
    names: Vec<String>,
    outcome: Vec<f64>,
    context: Vec<f64>,
    k: usize,
    tie_seed: u64,
) -> PyResult<Vec<(String, f64)>> {
    let features = named_matrix(names, rows)?;
    let ds = core::DomainDataset::with_raw_context(features, outcome, context).map_err(err)?;
    let report = core::ci_strengths(&ds, &core::EstimatorConfig::new(k, tie_seed)).map_err(err)?;
    Ok(report
        .entries
        .into_iter()
        .map(|e| (e.name, e.h_ci))
        .collect())
}

/// [`ci_strengths`] plus permutation p-values, as (name, h_ci, p_value)
/// tuples. The context must be integer-valued.
#[pyfunction]
#[pyo3(signature = (rows, names, outcome, context, perms, k = 3, tie_seed = 0, perm_seed = 0))]
#[allow(clippy::too_many_arguments)]
fn permutation_pvalues(
    rows: Vec<Vec<f64>>,
    names: Vec<String>,
    outcome: Vec<f64>,
    context: Vec<f64>,
    perms: usize,
    k: usize,
    tie_seed: u64,
    perm_seed: u64,
) -> PyResult<Vec<(String, f64, f64)>> {
    let features = named_matrix(names, rows)?;
    let ds = core::DomainDataset::with_raw_context(features, outcome, context).map_err(err)?;
    let report = core::permutation_pvalues(
        &ds,
        &core::EstimatorConfig::new(k, tie_seed),
        perms,
        perm_seed,
    )
    .map_err(err)?;
    Ok(report
        .entries
        .into_iter()
        .map(|e| (e.name, e.h_ci, e.p_value.expect("p-values requested")))
        .collect())
}

/// Run a built-in simulation pipeline ("exp1" or "exp2"); returns
/// (name, h_ci, p_value or None) tuples. p-values appear when perms > 0.
#[pyfunction]
#[pyo3(signature = (id, seed = 1, k = 3, perms = 0))]
fn run_experiment(
    id: &str,
    seed: u64,
    k: usize,
    perms: usize,
) -> PyResult<Vec<(String, f64, Option<f64>)>> {
    let id: core::ExperimentId = id.parse().map_err(err)?;
    let spec = core::ExperimentSpec {
        id,
        master_seed: seed,
        cfg: core::EstimatorConfig::new(k, seed),
        permutations: perms,
    };
    let report = core::run_experiment(&spec).map_err(err)?;
    Ok(report
        .entries
        .into_iter()
        .map(|e| (e.name, e.h_ci, e.p_value))
        .collect())
}

#[pymodule]
fn centropy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(rank_transform, m)?)?;
    m.add_function(wrap_pyfunction!(knn_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(copula_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(ci_measure, m)?)?;
    m.add_function(wrap_pyfunction!(transfer_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(sample_bivariate_gaussian, m)?)?;
    m.add_function(wrap_pyfunction!(sample_clayton, m)?)?;
    m.add_function(wrap_pyfunction!(sample_frank, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_pdf2, m)?)?;
    m.add_function(wrap_pyfunction!(clayton_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(frank_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(ci_strengths, m)?)?;
    m.add_function(wrap_pyfunction!(permutation_pvalues, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    Ok(())
}
