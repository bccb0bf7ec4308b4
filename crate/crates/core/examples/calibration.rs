//! Calibration sweep: estimator output against closed forms.
//!
//! Prints the copula entropy of bivariate Gaussian samples across
//! correlations (true value: 0.5 ln(1 - rho^2)) and the independence-null
//! estimate across sample sizes, averaged over seeds. Useful for eyeballing
//! the estimator's finite-sample bias before trusting a tolerance.
//!
//! Run: cargo run --release -p centropy-core --example calibration

use centropy_core::{copula_entropy, sample_bivariate_gaussian, EstimatorConfig, SampleMatrix};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() {
    let seeds = 10u64;
    let cfg = EstimatorConfig::default();

    println!("bivariate Gaussian, N=2000, k={}, {seeds} seeds", cfg.k);
    println!(
        "{:>6} {:>10} {:>10} {:>10}",
        "rho", "estimate", "true", "bias"
    );
    for rho in [0.0, 0.3, 0.5, 0.8, 0.9] {
        let mean = (0..seeds)
            .map(|s| {
                let m = sample_bivariate_gaussian(2000, (0.0, 0.0), rho, s).unwrap();
                copula_entropy(&m, &cfg).unwrap()
            })
            .sum::<f64>()
            / seeds as f64;
        let truth = 0.5 * (1.0 - rho * rho).ln();
        println!(
            "{rho:>6.2} {mean:>10.4} {truth:>10.4} {:>10.4}",
            mean - truth
        );
    }

    println!(
        "\nindependence null (true value 0), k={}, {seeds} seeds",
        cfg.k
    );
    println!("{:>6} {:>10}", "N", "estimate");
    for n in [500usize, 1000, 2000, 4000] {
        let mean = (0..seeds)
            .map(|s| {
                let mut rng = ChaCha12Rng::seed_from_u64(1000 * n as u64 + s);
                let a: Vec<f64> = (0..n).map(|_| rng.random()).collect();
                let b: Vec<f64> = (0..n).map(|_| rng.random()).collect();
                let m = SampleMatrix::from_columns(vec!["a", "b"], vec![a, b]).unwrap();
                copula_entropy(&m, &cfg).unwrap()
            })
            .sum::<f64>()
            / seeds as f64;
        println!("{n:>6} {mean:>10.4}");
    }
}
