//! Samplers and closed-form evaluators for the three bivariate dependence
//! structures used by the simulation pipelines: Gaussian, Clayton, and
//! Frank.
//!
//! The Archimedean samplers use conditional inversion: draw u1 uniform,
//! then invert the conditional distribution dC/du1 at a second uniform.
//! Both inversions are closed-form, so sampling is exact (no rejection).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::SampleMatrix;

/// Supported copula families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CopulaFamily {
    Gaussian,
    Clayton,
    Frank,
}

/// A copula family together with its scalar parameter (rho for Gaussian,
/// theta otherwise).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CopulaSpec {
    pub family: CopulaFamily,
    pub param: f64,
}

impl CopulaSpec {
    pub fn new(family: CopulaFamily, param: f64) -> Result<Self> {
        let spec = CopulaSpec { family, param };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self.family {
            CopulaFamily::Gaussian => {
                if !(self.param.is_finite() && self.param.abs() < 1.0) {
                    return Err(Error::Parameter(format!(
                        "gaussian correlation must satisfy -1 < rho < 1, got {}",
                        self.param
                    )));
                }
            }
            CopulaFamily::Clayton => {
                if !(self.param.is_finite() && self.param >= 0.0) {
                    return Err(Error::Parameter(format!(
                        "clayton parameter must satisfy theta >= 0, got {}",
                        self.param
                    )));
                }
            }
            CopulaFamily::Frank => {
                if !self.param.is_finite() || self.param == 0.0 {
                    return Err(Error::Parameter(format!(
                        "frank parameter must be finite and non-zero, got {}",
                        self.param
                    )));
                }
            }
        }
        Ok(())
    }

    /// Draw `n` bivariate observations from this dependence structure.
    /// Gaussian draws live in data space (standard normal marginals);
    /// Clayton and Frank draws live on the unit square.
    pub fn sample(&self, n: usize, seed: u64) -> Result<SampleMatrix> {
        self.validate()?;
        match self.family {
            CopulaFamily::Gaussian => sample_bivariate_gaussian(n, (0.0, 0.0), self.param, seed),
            CopulaFamily::Clayton => sample_clayton(n, self.param, seed),
            CopulaFamily::Frank => sample_frank(n, self.param, seed),
        }
    }
}

/// Uniform draw guaranteed inside the open interval (0, 1).
fn open_unit(rng: &mut ChaCha12Rng) -> f64 {
    loop {
        let v: f64 = rng.random();
        if v != 0.0 {
            return v;
        }
    }
}

/// `n` iid draws from a bivariate Gaussian with unit marginal variances,
/// correlation `rho`, shifted by `mean`. Columns are named x1, x2.
pub fn sample_bivariate_gaussian(
    n: usize,
    mean: (f64, f64),
    rho: f64,
    seed: u64,
) -> Result<SampleMatrix> {
    if !(rho.is_finite() && rho.abs() < 1.0) {
        return Err(Error::Parameter(format!(
            "correlation must satisfy |rho| < 1, got {rho}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidSample("cannot sample 0 observations".into()));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let scale = (1.0 - rho * rho).sqrt();
    let mut x1 = Vec::with_capacity(n);
    let mut x2 = Vec::with_capacity(n);
    for _ in 0..n {
        let z1: f64 = rng.sample(StandardNormal);
        let z2: f64 = rng.sample(StandardNormal);
        x1.push(mean.0 + z1);
        x2.push(mean.1 + rho * z1 + scale * z2);
    }
    SampleMatrix::from_columns(vec!["x1", "x2"], vec![x1, x2])
}

/// Standard bivariate normal density with zero means, unit variances, and
/// correlation `rho`, evaluated at (x1, x2).
pub fn gaussian_pdf2(x1: f64, x2: f64, rho: f64) -> Result<f64> {
    if !(rho.is_finite() && rho.abs() < 1.0) {
        return Err(Error::Parameter(format!(
            "correlation must satisfy |rho| < 1, got {rho}"
        )));
    }
    let det = 1.0 - rho * rho;
    // grouped so the expression is exactly symmetric in (x1, x2)
    let quad = (x1 * x1 + x2 * x2 - 2.0 * rho * (x1 * x2)) / det;
    Ok((-0.5 * quad).exp() / (2.0 * std::f64::consts::PI * det.sqrt()))
}

fn check_unit_interval(u: f64, name: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::Parameter(format!(
            "{name} must lie in [0, 1], got {u}"
        )));
    }
    Ok(())
}

/// `n` iid draws from the bivariate Clayton copula with parameter
/// `theta > 0`, via conditional inversion. Entries lie strictly inside
/// (0, 1); marginals are uniform.
pub fn sample_clayton(n: usize, theta: f64, seed: u64) -> Result<SampleMatrix> {
    if !(theta.is_finite() && theta > 0.0) {
        return Err(Error::Parameter(format!(
            "clayton sampling needs theta > 0, got {theta} (theta = 0 is independence; sample uniforms instead)"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidSample("cannot sample 0 observations".into()));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut u1s = Vec::with_capacity(n);
    let mut u2s = Vec::with_capacity(n);
    for _ in 0..n {
        let u1 = open_unit(&mut rng);
        let w = open_unit(&mut rng);
        // Invert dC/du1 = w:
        //   u2 = (1 + t * u1^(-theta))^(-1/theta),  t = w^(-theta/(1+theta)) - 1
        // evaluated in log-space so tiny u1 cannot overflow u1^(-theta).
        let t = (-theta / (1.0 + theta) * w.ln()).exp_m1();
        let a = -theta * u1.ln(); // ln(u1^(-theta)) >= 0
        let log_inner = a + (t + (-a).exp()).ln(); // = ln(1 + t * e^a)
        let u2 = (-log_inner / theta).exp();
        u1s.push(u1);
        u2s.push(u2);
    }
    SampleMatrix::from_columns(vec!["x1", "x2"], vec![u1s, u2s])
}

/// Clayton copula CDF
///
/// ```text
/// C(u1, u2) = (u1^(-theta) + u2^(-theta) - 1)^(-1/theta),  theta > 0
/// ```
///
/// with the boundary limits C(0, .) = C(., 0) = 0 handled explicitly. The
/// interior is evaluated in log-space to stay stable for small arguments.
pub fn clayton_cdf(u1: f64, u2: f64, theta: f64) -> Result<f64> {
    if !(theta.is_finite() && theta > 0.0) {
        return Err(Error::Parameter(format!(
            "clayton cdf needs theta > 0, got {theta}"
        )));
    }
    check_unit_interval(u1, "u1")?;
    check_unit_interval(u2, "u2")?;
    if u1 == 0.0 || u2 == 0.0 {
        return Ok(0.0);
    }
    if u1 == 1.0 {
        return Ok(u2);
    }
    if u2 == 1.0 {
        return Ok(u1);
    }
    let a1 = -theta * u1.ln();
    let a2 = -theta * u2.ln();
    let m = a1.max(a2);
    // ln(e^a1 + e^a2 - 1) = m + ln(e^(a1-m) + e^(a2-m) - e^(-m))
    let log_sum = m + ((a1 - m).exp() + (a2 - m).exp() - (-m).exp()).ln();
    Ok((-log_sum / theta).exp())
}

/// `n` iid draws from the bivariate Frank copula with parameter
/// `theta != 0`, via conditional inversion. Entries lie strictly inside
/// (0, 1); marginals are uniform.
pub fn sample_frank(n: usize, theta: f64, seed: u64) -> Result<SampleMatrix> {
    if !theta.is_finite() || theta == 0.0 {
        return Err(Error::Parameter(format!(
            "frank sampling needs finite theta != 0, got {theta} (theta = 0 is independence; sample uniforms instead)"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidSample("cannot sample 0 observations".into()));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let d = (-theta).exp_m1(); // e^(-theta) - 1
    let mut u1s = Vec::with_capacity(n);
    let mut u2s = Vec::with_capacity(n);
    for _ in 0..n {
        let u1 = open_unit(&mut rng);
        let w = open_unit(&mut rng);
        // Invert dC/du1 = w:
        //   e^(-theta*u2) - 1 = w * d / (w + e^(-theta*u1) * (1 - w))
        let a = (-theta * u1).exp();
        let b = w * d / (w + a * (1.0 - w));
        let u2 = -b.ln_1p() / theta;
        u1s.push(u1);
        u2s.push(u2);
    }
    SampleMatrix::from_columns(vec!["x1", "x2"], vec![u1s, u2s])
}

/// Frank copula CDF
///
/// ```text
/// C(u1, u2) = -(1/theta) * ln(1 + (e^(-theta*u1) - 1)(e^(-theta*u2) - 1)
///                                 / (e^(-theta) - 1))
/// ```
///
/// For |theta| below 1e-8 the independence limit u1*u2 is returned, and
/// boundary arguments take their exact limit values. expm1/log1p keep the
/// evaluation stable near theta = 0.
pub fn frank_cdf(u1: f64, u2: f64, theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::Parameter(format!(
            "frank cdf needs finite theta, got {theta}"
        )));
    }
    check_unit_interval(u1, "u1")?;
    check_unit_interval(u2, "u2")?;
    if theta.abs() < 1e-8 {
        return Ok(u1 * u2);
    }
    if u1 == 0.0 || u2 == 0.0 {
        return Ok(0.0);
    }
    if u1 == 1.0 {
        return Ok(u2);
    }
    if u2 == 1.0 {
        return Ok(u1);
    }
    let g1 = (-theta * u1).exp_m1();
    let g2 = (-theta * u2).exp_m1();
    let g = (-theta).exp_m1();
    Ok(-(g1 * g2 / g).ln_1p() / theta)
}
