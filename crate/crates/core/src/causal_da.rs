//! Invariant feature selection across domains.
//!
//! Multi-domain data is pooled under a context variable that indexes the
//! domain (the intervention). For each feature, the conditional-dependence
//! strength with the outcome given the context is estimated; features that
//! stay conditionally dependent are the invariant predictive subset. An
//! optional permutation test turns the raw strengths into p-values.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::{ci_measure, copula_entropy, EstimatorConfig};
use crate::sample::SampleMatrix;
use crate::seed::{self, ns};

/// Pooled multi-domain data: feature matrix, outcome column, and a context
/// column holding the 1-based domain index of every row.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainDataset {
    features: SampleMatrix,
    outcome: Vec<f64>,
    context: Vec<f64>,
    domain_sizes: Vec<usize>,
}

impl DomainDataset {
    pub fn features(&self) -> &SampleMatrix {
        &self.features
    }

    pub fn outcome(&self) -> &[f64] {
        &self.outcome
    }

    pub fn context(&self) -> &[f64] {
        &self.context
    }

    pub fn domain_sizes(&self) -> &[usize] {
        &self.domain_sizes
    }

    pub fn n_rows(&self) -> usize {
        self.outcome.len()
    }

    /// Regroup an already-pooled table by the distinct values of a context
    /// column. Domains are ordered by first appearance of their context
    /// value; rows keep their original order within each domain and the
    /// context is relabeled to the 1-based domain index.
    pub fn from_pooled(
        features: SampleMatrix,
        outcome: Vec<f64>,
        context: Vec<f64>,
    ) -> Result<DomainDataset> {
        let n = features.n_rows();
        if outcome.len() != n || context.len() != n {
            return Err(Error::Shape(format!(
                "features have {n} rows but outcome/context have {}/{}",
                outcome.len(),
                context.len()
            )));
        }
        if outcome.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidData("non-finite outcome entry".into()));
        }
        if context.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidData("non-finite context entry".into()));
        }
        let mut levels: Vec<f64> = Vec::new();
        for &c in &context {
            if !levels.contains(&c) {
                levels.push(c);
            }
        }
        let mut domains = Vec::with_capacity(levels.len());
        for level in &levels {
            let rows: Vec<usize> = (0..n).filter(|&i| context[i] == *level).collect();
            let cols: Vec<Vec<f64>> = (0..features.n_cols())
                .map(|j| {
                    let col = features.column(j);
                    rows.iter().map(|&i| col[i]).collect()
                })
                .collect();
            let matrix = SampleMatrix::from_columns(features.column_names().to_vec(), cols)?;
            let y: Vec<f64> = rows.iter().map(|&i| outcome[i]).collect();
            domains.push((matrix, y));
        }
        augment_domains(&domains)
    }

    /// Keep a pooled table as-is, with the context column taken verbatim
    /// (e.g. a continuous intervention). Rows are not regrouped and the
    /// context is not relabeled; the permutation test will refuse such a
    /// dataset unless the context values are integers.
    pub fn with_raw_context(
        features: SampleMatrix,
        outcome: Vec<f64>,
        context: Vec<f64>,
    ) -> Result<DomainDataset> {
        let n = features.n_rows();
        if outcome.len() != n || context.len() != n {
            return Err(Error::Shape(format!(
                "features have {n} rows but outcome/context have {}/{}",
                outcome.len(),
                context.len()
            )));
        }
        if outcome.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidData("non-finite outcome entry".into()));
        }
        if context.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidData("non-finite context entry".into()));
        }
        let mut levels: Vec<f64> = Vec::new();
        for &c in &context {
            if !levels.contains(&c) {
                levels.push(c);
            }
        }
        let domain_sizes = levels
            .iter()
            .map(|lvl| context.iter().filter(|&&c| c == *lvl).count())
            .collect();
        Ok(DomainDataset {
            features,
            outcome,
            context,
            domain_sizes,
        })
    }
}

/// Pool per-domain samples into one [`DomainDataset`], augmenting each row
/// with the 1-based index of the domain it came from.
pub fn augment_domains(domains: &[(SampleMatrix, Vec<f64>)]) -> Result<DomainDataset> {
    let (first, _) = domains
        .first()
        .ok_or_else(|| Error::InvalidData("need at least one domain".into()))?;
    let names = first.column_names().to_vec();
    for (i, (m, y)) in domains.iter().enumerate() {
        if m.column_names() != names.as_slice() {
            return Err(Error::Schema(format!(
                "domain {} has columns {:?}, expected {:?}",
                i + 1,
                m.column_names(),
                names
            )));
        }
        if y.len() != m.n_rows() {
            return Err(Error::Shape(format!(
                "domain {}: outcome length {} does not match {} rows",
                i + 1,
                y.len(),
                m.n_rows()
            )));
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidData(format!(
                "domain {}: non-finite outcome entry",
                i + 1
            )));
        }
    }
    let d = names.len();
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); d];
    let mut outcome = Vec::new();
    let mut context = Vec::new();
    let mut domain_sizes = Vec::with_capacity(domains.len());
    for (index, (m, y)) in domains.iter().enumerate() {
        for (j, col) in columns.iter_mut().enumerate() {
            col.extend(m.column(j));
        }
        outcome.extend_from_slice(y);
        context.extend(std::iter::repeat_n((index + 1) as f64, m.n_rows()));
        domain_sizes.push(m.n_rows());
    }
    Ok(DomainDataset {
        features: SampleMatrix::from_columns(names, columns)?,
        outcome,
        context,
        domain_sizes,
    })
}

/// Per-feature conditional-dependence estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CiEntry {
    pub name: String,
    pub h_ci: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_value: Option<f64>,
}

/// Conditional-dependence report: one entry per feature column, plus the
/// estimator settings and seed provenance needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CiReport {
    pub entries: Vec<CiEntry>,
    pub k: usize,
    pub tie_seed: u64,
    /// Number of permutations behind the p-values; 0 when none were run.
    pub permutations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perm_seed: Option<u64>,
}

impl CiReport {
    pub fn entry(&self, name: &str) -> Option<&CiEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn h_ci(&self, name: &str) -> Option<f64> {
        self.entry(name).map(|e| e.h_ci)
    }

    /// Entries ordered by descending strength; ties keep column order.
    pub fn sorted_by_strength(&self) -> Vec<&CiEntry> {
        let mut order: Vec<usize> = (0..self.entries.len()).collect();
        order.sort_by(|&a, &b| {
            self.entries[b]
                .h_ci
                .total_cmp(&self.entries[a].h_ci)
                .then(a.cmp(&b))
        });
        order.into_iter().map(|i| &self.entries[i]).collect()
    }
}

/// Estimate, for every feature, the conditional-dependence strength with
/// the outcome given the context.
pub fn ci_strengths(ds: &DomainDataset, cfg: &EstimatorConfig) -> Result<CiReport> {
    let n = ds.n_rows();
    if n < cfg.k + 2 {
        return Err(Error::InvalidSample(format!(
            "pooled dataset has {n} rows, need at least k+2={}",
            cfg.k + 2
        )));
    }
    let mut entries = Vec::with_capacity(ds.features.n_cols());
    for j in 0..ds.features.n_cols() {
        let name = ds.features.column_names()[j].clone();
        let col = ds.features.column(j);
        let h_ci = ci_measure(&col, &ds.outcome, &ds.context, cfg)
            .map_err(|e| e.prefixed(&format!("feature {name:?}")))?;
        entries.push(CiEntry {
            name,
            h_ci,
            p_value: None,
        });
    }
    Ok(CiReport {
        entries,
        k: cfg.k,
        tie_seed: cfg.tie_seed,
        permutations: 0,
        perm_seed: None,
    })
}

/// Master permutation seed conventionally derived from a pipeline seed, so
/// independent entry points (experiments, CLI) agree on it.
pub fn default_perm_seed(pipeline_seed: u64) -> u64 {
    seed::derive(pipeline_seed, ns::PIPELINE, 4)
}

/// [`ci_strengths`] plus permutation p-values.
///
/// The null distribution permutes the outcome within each context stratum,
/// preserving the outcome-given-context marginals while destroying any
/// conditional dependence on the features. p = (1 + #{permuted >= observed})
/// / (B + 1). Requires a discrete (integer-valued) context.
pub fn permutation_pvalues(
    ds: &DomainDataset,
    cfg: &EstimatorConfig,
    permutations: usize,
    perm_seed: u64,
) -> Result<CiReport> {
    if permutations == 0 {
        return Err(Error::Config("permutation count must be at least 1".into()));
    }
    if ds.context.iter().any(|c| c.fract() != 0.0) {
        return Err(Error::Config(
            "permutation test requires a discrete context variable".into(),
        ));
    }
    let mut report = ci_strengths(ds, cfg)?;

    // strata = row indices per distinct context value, in first-appearance order
    let mut levels: Vec<f64> = Vec::new();
    for &c in &ds.context {
        if !levels.contains(&c) {
            levels.push(c);
        }
    }
    let strata: Vec<Vec<usize>> = levels
        .iter()
        .map(|lvl| {
            (0..ds.n_rows())
                .filter(|&i| ds.context[i] == *lvl)
                .collect()
        })
        .collect();

    let feature_cols: Vec<Vec<f64>> = (0..ds.features.n_cols())
        .map(|j| ds.features.column(j))
        .collect();

    // h_c(x, z) never involves the outcome, so it is shared across
    // permutations exactly; h_c(y_b, z) is shared across features.
    let two = |a: &[f64], b: &[f64]| -> Result<f64> {
        copula_entropy(
            &SampleMatrix::from_columns(vec!["x", "z"], vec![a.to_vec(), b.to_vec()])?,
            cfg,
        )
    };
    let three = |a: &[f64], b: &[f64], c: &[f64]| -> Result<f64> {
        copula_entropy(
            &SampleMatrix::from_columns(
                vec!["x", "y", "z"],
                vec![a.to_vec(), b.to_vec(), c.to_vec()],
            )?,
            cfg,
        )
    };
    let h_xz: Vec<f64> = feature_cols
        .iter()
        .map(|col| two(col, &ds.context))
        .collect::<Result<_>>()?;

    let mut exceed = vec![0usize; feature_cols.len()];
    let mut permuted = ds.outcome.clone();
    for b in 0..permutations {
        let mut rng =
            ChaCha12Rng::seed_from_u64(seed::derive(perm_seed, ns::PERMUTATION, b as u64));
        permuted.copy_from_slice(&ds.outcome);
        for stratum in &strata {
            let mut vals: Vec<f64> = stratum.iter().map(|&i| permuted[i]).collect();
            vals.shuffle(&mut rng);
            for (&i, v) in stratum.iter().zip(vals) {
                permuted[i] = v;
            }
        }
        let h_yz = two(&permuted, &ds.context)?;
        for (f, col) in feature_cols.iter().enumerate() {
            let h_b = h_xz[f] + h_yz - three(col, &permuted, &ds.context)?;
            if h_b >= report.entries[f].h_ci {
                exceed[f] += 1;
            }
        }
    }
    for (entry, count) in report.entries.iter_mut().zip(exceed) {
        entry.p_value = Some((1 + count) as f64 / (permutations + 1) as f64);
    }
    report.permutations = permutations;
    report.perm_seed = Some(perm_seed);
    Ok(report)
}

/// How to pick the invariant feature subset out of a [`CiReport`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SelectionCriterion {
    /// Features with h_ci strictly above the threshold.
    Threshold(f64),
    /// The m largest strengths; ties broken by column order.
    TopM(usize),
    /// Features with p-value at most alpha; requires permutation p-values.
    Alpha(f64),
}

/// Apply a selection criterion, returning feature names in report order
/// (strength order for `TopM`).
pub fn select_features(report: &CiReport, criterion: SelectionCriterion) -> Result<Vec<String>> {
    if report.entries.is_empty() {
        return Err(Error::InvalidData("empty report".into()));
    }
    match criterion {
        SelectionCriterion::Threshold(t) => Ok(report
            .entries
            .iter()
            .filter(|e| e.h_ci > t)
            .map(|e| e.name.clone())
            .collect()),
        SelectionCriterion::TopM(m) => Ok(report
            .sorted_by_strength()
            .into_iter()
            .take(m)
            .map(|e| e.name.clone())
            .collect()),
        SelectionCriterion::Alpha(alpha) => {
            if report.entries.iter().any(|e| e.p_value.is_none()) {
                return Err(Error::Config(
                    "alpha selection requires permutation p-values".into(),
                ));
            }
            Ok(report
                .entries
                .iter()
                .filter(|e| e.p_value.expect("checked above") <= alpha)
                .map(|e| e.name.clone())
                .collect())
        }
    }
}
