//! Nonparametric estimation of copula entropy and conditional dependence.
//!
//! The pipeline is rank-based: observations are mapped to normalized ranks
//! (the empirical copula sample), and the differential entropy of that
//! point set is estimated from k-nearest-neighbor distances. Copula entropy
//! equals negative mutual information, is at most zero, vanishes exactly
//! under independence, and is invariant under strictly monotone per-column
//! transforms — the ranks never change.
//!
//! Conditional dependence of (x, y) given a scalar z is measured by the
//! three-term combination
//!
//! ```text
//! h_ci(x, y, z) = h_c(x, z) + h_c(y, z) - h_c(x, y, z)
//! ```
//!
//! which coincides with the conditional mutual information I(x; y | z):
//! nonnegative, zero iff x and y are conditionally independent given z.
//! Transfer entropy is the same measure applied to lagged series.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::knn::KdTree;
use crate::sample::{PseudoSample, SampleMatrix};
use crate::seed::{self, ns};
use crate::special::digamma;

/// Settings for the k-NN estimator. The distance metric is fixed to
/// Chebyshev (max-coordinate); only the neighbor count and the tie-breaking
/// seed vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EstimatorConfig {
    /// Neighbor count; must satisfy 1 <= k <= N-1 when used.
    pub k: usize,
    /// Seed for randomized rank tie-breaking.
    pub tie_seed: u64,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig { k: 3, tie_seed: 0 }
    }
}

impl EstimatorConfig {
    pub fn new(k: usize, tie_seed: u64) -> Self {
        EstimatorConfig { k, tie_seed }
    }
}

/// Distances below this floor are clamped before taking logs, so coincident
/// points (possible after tie-breaking when rows repeat jointly) cannot
/// produce -inf. Ten times the smallest positive normal f64.
const EPSILON_FLOOR: f64 = f64::MIN_POSITIVE * 10.0;

/// Map each column of `x` to normalized ranks rank/N in {1/N, ..., 1}.
///
/// Ties are broken uniformly at random among the tied entries, driven by a
/// per-column stream derived from `tie_seed`, so results are reproducible
/// and strictly monotone per-column transforms leave the output unchanged
/// (tied groups and their seeded shuffles are preserved).
pub fn rank_transform(x: &SampleMatrix, tie_seed: u64) -> Result<PseudoSample> {
    let n = x.n_rows();
    let d = x.n_cols();
    if n < 2 {
        return Err(Error::InvalidSample(format!(
            "rank transform needs at least 2 observations, got {n}"
        )));
    }
    let mut values = vec![0.0; n * d];
    let mut idx: Vec<u32> = Vec::with_capacity(n);
    for j in 0..d {
        let col = x.column(j);
        idx.clear();
        idx.extend(0..n as u32);
        idx.sort_unstable_by(|&a, &b| col[a as usize].total_cmp(&col[b as usize]).then(a.cmp(&b)));
        let mut rng = ChaCha12Rng::seed_from_u64(seed::derive(tie_seed, ns::TIE_BREAK, j as u64));
        let mut start = 0;
        while start < n {
            let v = col[idx[start] as usize];
            let mut end = start + 1;
            while end < n && col[idx[end] as usize] == v {
                end += 1;
            }
            if end - start > 1 {
                idx[start..end].shuffle(&mut rng);
            }
            start = end;
        }
        for (pos, &row) in idx.iter().enumerate() {
            values[row as usize * d + j] = (pos + 1) as f64 / n as f64;
        }
    }
    Ok(PseudoSample {
        values,
        n_rows: n,
        n_cols: d,
    })
}

/// k-NN differential entropy of a point set, in nats.
///
/// For each point, eps_i is twice the Chebyshev distance to its k-th
/// nearest neighbor (self excluded); the estimate is
///
/// ```text
/// H = -psi(k) + psi(N) + (d/N) * sum_i ln eps_i
/// ```
///
/// With the Chebyshev metric and the factor of two the volume-correction
/// term vanishes.
pub fn knn_entropy(points: &SampleMatrix, k: usize) -> Result<f64> {
    knn_entropy_points(points.values(), points.n_rows(), points.n_cols(), k)
}

pub(crate) fn knn_entropy_points(points: &[f64], n: usize, d: usize, k: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidSample(format!(
            "entropy estimation needs at least 2 points, got {n}"
        )));
    }
    if k < 1 || k > n - 1 {
        return Err(Error::Config(format!(
            "neighbor count k={k} outside 1..={} for {n} points",
            n - 1
        )));
    }
    let tree = KdTree::build(points, d);
    let mut sum_log_eps = 0.0;
    for i in 0..n {
        let dist = tree.kth_distance(&points[i * d..(i + 1) * d], i as u32, k);
        let eps = (2.0 * dist).max(EPSILON_FLOOR);
        sum_log_eps += eps.ln();
    }
    Ok(digamma(n as f64) - digamma(k as f64) + (d as f64 / n as f64) * sum_log_eps)
}

/// Copula entropy of the columns of `x`, in nats: the k-NN entropy of the
/// rank-transformed sample. Theoretically <= 0 with 0 iff the columns are
/// jointly independent; the raw estimate is returned without clamping, so
/// small positive values can occur from estimation noise.
pub fn copula_entropy(x: &SampleMatrix, cfg: &EstimatorConfig) -> Result<f64> {
    if x.n_cols() < 2 {
        return Err(Error::Dimension(
            "copula entropy is undefined for a single variable".into(),
        ));
    }
    let pseudo = rank_transform(x, cfg.tie_seed)?;
    knn_entropy_points(&pseudo.values, pseudo.n_rows, pseudo.n_cols, cfg.k)
}

/// Conditional-dependence strength of (x, y) given scalar z, in nats:
/// `h_c(x,z) + h_c(y,z) - h_c(x,y,z)`, each term estimated with the same
/// configuration. Equals conditional mutual information in theory (>= 0,
/// zero iff conditionally independent); the raw estimate may dip slightly
/// below zero.
pub fn ci_measure(x: &[f64], y: &[f64], z: &[f64], cfg: &EstimatorConfig) -> Result<f64> {
    let n = x.len();
    if y.len() != n || z.len() != n {
        return Err(Error::Shape(format!(
            "ci_measure needs equal-length columns, got {n}/{}/{}",
            y.len(),
            z.len()
        )));
    }
    if n < cfg.k + 2 {
        return Err(Error::InvalidSample(format!(
            "ci_measure needs at least k+2={} observations, got {n}",
            cfg.k + 2
        )));
    }
    let h_xz = copula_entropy(
        &SampleMatrix::from_columns(vec!["x", "z"], vec![x.to_vec(), z.to_vec()])?,
        cfg,
    )?;
    let h_yz = copula_entropy(
        &SampleMatrix::from_columns(vec!["y", "z"], vec![y.to_vec(), z.to_vec()])?,
        cfg,
    )?;
    let h_xyz = copula_entropy(
        &SampleMatrix::from_columns(
            vec!["x", "y", "z"],
            vec![x.to_vec(), y.to_vec(), z.to_vec()],
        )?,
        cfg,
    )?;
    Ok(h_xz + h_yz - h_xyz)
}

/// Transfer entropy from `x` to `y` at the given lag, in nats: the
/// conditional dependence of y_t and x_{t-lag} given y_{t-lag} over the
/// T - lag aligned triples.
pub fn transfer_entropy(x: &[f64], y: &[f64], lag: usize, cfg: &EstimatorConfig) -> Result<f64> {
    let t = x.len();
    if y.len() != t {
        return Err(Error::Shape(format!(
            "series lengths differ: {t} vs {}",
            y.len()
        )));
    }
    if lag == 0 {
        return Err(Error::Config("lag must be a positive integer".into()));
    }
    if lag >= t {
        return Err(Error::Config(format!(
            "lag {lag} must be smaller than the series length {t}"
        )));
    }
    let m = t - lag;
    ci_measure(&y[lag..], &x[..m], &y[..m], cfg)
}
