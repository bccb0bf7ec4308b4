//! Acceptance suite: one test per criterion, each printing its measured
//! values next to the pinned tolerance (run with `-- --nocapture` to see
//! them). The criteria cover closed-form calibration of the estimators,
//! exact invariances, the two simulation pipelines, permutation-test
//! calibration, and the CLI contract.

use std::fmt::Write as _;
use std::process::Command;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use centropy_core::{
    augment_domains, ci_measure, clayton_cdf, copula_entropy, experiment1_dataset, frank_cdf,
    permutation_pvalues, run_experiment, run_experiment1, sample_bivariate_gaussian,
    sample_clayton, sample_frank, stats::kendall_tau, transfer_entropy, CiReport, EstimatorConfig,
    ExperimentId, ExperimentSpec, SampleMatrix,
};

const K: usize = 3;

fn cfg(tie_seed: u64) -> EstimatorConfig {
    EstimatorConfig::new(K, tie_seed)
}

fn uniform_column(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random::<f64>()).collect()
}

fn normal_column(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal))
        .collect()
}

fn matrix(names: &[&str], cols: Vec<Vec<f64>>) -> SampleMatrix {
    SampleMatrix::from_columns(names.to_vec(), cols).unwrap()
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

#[test]
fn criterion_01_gaussian_ce_calibration() {
    let started = Instant::now();
    let mut ok = true;
    let mut summary = String::new();
    for rho in [0.3f64, 0.5, 0.8] {
        let target = 0.5 * (1.0 - rho * rho).ln();
        let estimates: Vec<f64> = (0..10u64)
            .map(|s| {
                let m = sample_bivariate_gaussian(2000, (0.0, 0.0), rho, s).unwrap();
                copula_entropy(&m, &cfg(s)).unwrap()
            })
            .collect();
        let got = mean(&estimates);
        let pass = (got - target).abs() < 0.05;
        ok &= pass;
        write!(summary, "rho={rho}: mean={got:.4} target={target:.4}; ").unwrap();
    }
    let elapsed = started.elapsed();
    ok &= elapsed.as_secs_f64() < 10.0;
    println!(
        "criterion 1 {}: Gaussian CE calibration over 10 seeds, N=2000, k=3 — {summary}runtime {:.2}s (< 10s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    assert!(ok, "{summary} runtime {elapsed:?}");
}

#[test]
fn criterion_02_independence_null() {
    // pairwise null
    let ce_estimates: Vec<f64> = (0..10u64)
        .map(|s| {
            let m = matrix(
                &["a", "b"],
                vec![uniform_column(1000, 100 + s), uniform_column(1000, 200 + s)],
            );
            copula_entropy(&m, &cfg(s)).unwrap()
        })
        .collect();
    let ce_abs_mean = mean(&ce_estimates.iter().map(|v| v.abs()).collect::<Vec<_>>());

    // triple null
    let ci_estimates: Vec<f64> = (0..10u64)
        .map(|s| {
            let x = uniform_column(1000, 300 + s);
            let y = uniform_column(1000, 400 + s);
            let z = uniform_column(1000, 500 + s);
            ci_measure(&x, &y, &z, &cfg(s)).unwrap()
        })
        .collect();
    let ci_abs_mean = mean(&ci_estimates.iter().map(|v| v.abs()).collect::<Vec<_>>());

    let pass = ce_abs_mean < 0.05 && ci_abs_mean < 0.05;
    println!(
        "criterion 2 {}: independence null at N=1000 over 10 seeds — mean |h_c|={ce_abs_mean:.4} (< 0.05), mean |h_ci|={ci_abs_mean:.4} (< 0.05)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(
        pass,
        "mean |h_c| = {ce_abs_mean:.4}, mean |h_ci| = {ci_abs_mean:.4} (both must be < 0.05)"
    );
}

#[test]
fn criterion_03_monotone_invariance() {
    let mut rng = ChaCha12Rng::seed_from_u64(12345);
    let maps: [fn(f64) -> f64; 4] = [|v| v.exp(), |v| v.powi(3), |v| 2.5 * v + 1.0, |v| v.atan()];
    for case in 0..100 {
        let n = 50 + (rng.random::<u64>() % 100) as usize;
        let tie_seed = rng.random::<u64>();
        let estimator = cfg(tie_seed);
        let cols: Vec<Vec<f64>> = (0..3)
            .map(|_| (0..n).map(|_| 6.0 * rng.random::<f64>() - 3.0).collect())
            .collect();
        let target_col = (rng.random::<u64>() % 3) as usize;
        let map = maps[(rng.random::<u64>() % 4) as usize];
        let mut mapped = cols.clone();
        mapped[target_col] = mapped[target_col].iter().map(|&v| map(v)).collect();

        let names = ["x", "y", "z"];
        let h = copula_entropy(&matrix(&names, cols.clone()), &estimator).unwrap();
        let h_mapped = copula_entropy(&matrix(&names, mapped.clone()), &estimator).unwrap();
        assert_eq!(
            h.to_bits(),
            h_mapped.to_bits(),
            "case {case}: CE changed under monotone map"
        );

        let ci = ci_measure(&cols[0], &cols[1], &cols[2], &estimator).unwrap();
        let ci_mapped = ci_measure(&mapped[0], &mapped[1], &mapped[2], &estimator).unwrap();
        assert_eq!(
            ci.to_bits(),
            ci_mapped.to_bits(),
            "case {case}: CI changed under monotone map"
        );
    }
    println!(
        "criterion 3 PASS: CE and CI bit-identical under monotone column transforms in 100/100 randomized cases"
    );
}

#[test]
fn criterion_04_gaussian_conditional_mi() {
    // Markov chain x -> z -> y: conditional independence
    let markov: Vec<f64> = (0..10u64)
        .map(|s| {
            let x = normal_column(2000, 9000 + s);
            let e1 = normal_column(2000, 10000 + s);
            let e2 = normal_column(2000, 11000 + s);
            let z: Vec<f64> = x.iter().zip(&e1).map(|(a, b)| a + b).collect();
            let y: Vec<f64> = z.iter().zip(&e2).map(|(a, b)| a + b).collect();
            ci_measure(&x, &y, &z, &cfg(s)).unwrap()
        })
        .collect();
    let markov_mean = mean(&markov);

    // partial correlation 0.6 given z: CMI = -0.5 ln(1 - 0.36)
    let r: f64 = 0.6;
    let target = -0.5 * (1.0 - r * r).ln();
    let partial: Vec<f64> = (0..10u64)
        .map(|s| {
            let z = normal_column(2000, 12000 + s);
            let g1 = normal_column(2000, 13000 + s);
            let g2 = normal_column(2000, 14000 + s);
            let x: Vec<f64> = z.iter().zip(&g1).map(|(a, b)| a + b).collect();
            let y: Vec<f64> = z
                .iter()
                .zip(g1.iter().zip(&g2))
                .map(|(a, (b, c))| a + r * b + (1.0 - r * r).sqrt() * c)
                .collect();
            ci_measure(&x, &y, &z, &cfg(s)).unwrap()
        })
        .collect();
    let partial_mean = mean(&partial);

    let pass = markov_mean.abs() < 0.05 && (partial_mean - target).abs() < 0.08;
    println!(
        "criterion 4 {}: Markov-chain null mean={markov_mean:.4} (|.| < 0.05); partial-correlation CMI mean={partial_mean:.4} target={target:.4} (+/- 0.08)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(
        pass,
        "markov {markov_mean:.4}, partial {partial_mean:.4} vs {target:.4}"
    );
}

#[test]
fn criterion_05_transfer_entropy() {
    let target = 0.5 * 2.0f64.ln();
    let mut fwd = Vec::new();
    let mut rev = Vec::new();
    for s in 0..10u64 {
        let x = normal_column(2000, 15000 + s);
        let e = normal_column(2000, 16000 + s);
        let mut y = vec![0.0; 2000];
        y[0] = e[0];
        for i in 1..2000 {
            y[i] = x[i - 1] + e[i];
        }
        fwd.push(transfer_entropy(&x, &y, 1, &cfg(s)).unwrap());
        rev.push(transfer_entropy(&y, &x, 1, &cfg(s)).unwrap());
    }
    let fwd_mean = mean(&fwd);
    let rev_mean = mean(&rev);
    let pass = (fwd_mean - target).abs() < 0.08 && rev_mean.abs() < 0.05;
    println!(
        "criterion 5 {}: TE(x->y) mean={fwd_mean:.4} target={target:.4} (+/- 0.08); TE(y->x) mean={rev_mean:.4} (|.| < 0.05)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "fwd {fwd_mean:.4} vs {target:.4}, rev {rev_mean:.4}");
}

#[test]
fn criterion_06_copula_samplers_and_evaluators() {
    // Clayton: tau = theta / (theta + 2) = 0.6 at theta = 3
    let clayton = sample_clayton(2000, 3.0, 1).unwrap();
    let clayton_tau = kendall_tau(&clayton.column(0), &clayton.column(1));

    // Frank: tau from the Debye-function quadrature oracle
    let theta = 5.0;
    let tau_oracle = frank_tau_oracle(theta);
    let frank = sample_frank(2000, theta, 2).unwrap();
    let frank_tau = kendall_tau(&frank.column(0), &frank.column(1));

    // boundary identities, exact to 1e-12
    let mut boundary_ok = true;
    let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    for &u in &grid {
        for &tc in &[0.5, 1.0, 2.0, 5.0, 8.0] {
            boundary_ok &= (clayton_cdf(u, 1.0, tc).unwrap() - u).abs() <= 1e-12;
            boundary_ok &= (clayton_cdf(1.0, u, tc).unwrap() - u).abs() <= 1e-12;
            boundary_ok &= (clayton_cdf(1.0, 1.0, tc).unwrap() - 1.0).abs() <= 1e-12;
        }
        for &tf in &[-2.0, -0.5, 0.5, 2.0, 5.0, 8.0] {
            boundary_ok &= (frank_cdf(u, 1.0, tf).unwrap() - u).abs() <= 1e-12;
            boundary_ok &= (frank_cdf(1.0, u, tf).unwrap() - u).abs() <= 1e-12;
            boundary_ok &= (frank_cdf(1.0, 1.0, tf).unwrap() - 1.0).abs() <= 1e-12;
        }
    }

    let pass = (clayton_tau - 0.6).abs() < 0.05
        && (frank_tau - tau_oracle).abs() < 0.05
        && (tau_oracle - 0.4567).abs() < 2e-3
        && boundary_ok;
    println!(
        "criterion 6 {}: Clayton tau={clayton_tau:.4} (0.6 +/- 0.05); Frank tau={frank_tau:.4} oracle={tau_oracle:.4} (+/- 0.05); boundary identities {}",
        if pass { "PASS" } else { "FAIL" },
        if boundary_ok { "exact to 1e-12" } else { "VIOLATED" }
    );
    assert!(pass, "clayton {clayton_tau:.4}, frank {frank_tau:.4} vs {tau_oracle:.4}, boundary_ok={boundary_ok}");
}

#[test]
fn criterion_07_experiment1_reproduction() {
    run_experiment_criterion(ExperimentId::Exp1, 7);
}

#[test]
fn criterion_08_experiment2_reproduction() {
    run_experiment_criterion(ExperimentId::Exp2, 8);
}

fn run_experiment_criterion(id: ExperimentId, number: usize) {
    let started = Instant::now();
    let mut separations = 0;
    let mut x3_abs = Vec::new();
    for s in 0..10u64 {
        let report = run_experiment(&ExperimentSpec::new(id, s)).unwrap();
        let h1 = report.h_ci("x1").unwrap();
        let h2 = report.h_ci("x2").unwrap();
        let h3 = report.h_ci("x3").unwrap();
        if h1 > h3 && h2 > h3 {
            separations += 1;
        }
        x3_abs.push(h3.abs());
    }
    let x3_mean = mean(&x3_abs);
    let elapsed = started.elapsed();
    let pass = separations >= 9 && x3_mean < 0.05 && elapsed.as_secs_f64() < 30.0;
    println!(
        "criterion {number} {}: {id:?} — drivers above distractor in {separations}/10 seeds (>= 9), mean |h_ci(x3)|={x3_mean:.4} (< 0.05), runtime {:.2}s (< 30s)",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    assert!(
        pass,
        "separations {separations}/10, mean |x3| {x3_mean:.4}, runtime {elapsed:?}"
    );
}

#[test]
fn criterion_09_permutation_calibration() {
    // false positives on a fully independent 5-feature dataset
    let mut flagged = 0usize;
    let mut total = 0usize;
    for run in 0..20u64 {
        let n = 250;
        let base = 700 + 10 * run;
        let features: Vec<Vec<f64>> = (0..5).map(|j| uniform_column(2 * n, base + j)).collect();
        let names = ["f1", "f2", "f3", "f4", "f5"];
        let d1 = matrix(&names, features.iter().map(|c| c[..n].to_vec()).collect());
        let d2 = matrix(&names, features.iter().map(|c| c[n..].to_vec()).collect());
        let y = uniform_column(2 * n, base + 7);
        let ds = augment_domains(&[(d1, y[..n].to_vec()), (d2, y[n..].to_vec())]).unwrap();
        let report = permutation_pvalues(&ds, &cfg(run), 200, 4000 + run).unwrap();
        for e in &report.entries {
            total += 1;
            if e.p_value.unwrap() <= 0.05 {
                flagged += 1;
            }
        }
    }
    let fp_rate = flagged as f64 / total as f64;

    // power on the first pipeline's x1
    let mut significant = 0;
    for s in 0..10u64 {
        let mut spec = ExperimentSpec::new(ExperimentId::Exp1, s);
        spec.permutations = 200;
        let report = run_experiment(&spec).unwrap();
        if report.entry("x1").unwrap().p_value.unwrap() <= 0.05 {
            significant += 1;
        }
    }

    let pass = fp_rate <= 0.10 && significant >= 8;
    println!(
        "criterion 9 {}: null false-positive rate {fp_rate:.3} over {total} feature tests (<= 0.10); x1 significant in {significant}/10 runs (>= 8)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "fp rate {fp_rate:.3}, power {significant}/10");
}

#[test]
fn criterion_10_cli_equivalence_and_determinism() {
    let bin = env!("CARGO_BIN_EXE_centropy");
    let run = |args: &[&str]| -> std::process::Output {
        Command::new(bin).args(args).output().expect("binary runs")
    };

    // byte-identical repeated invocations
    let a = run(&["sim", "exp1", "--seed", "1"]);
    let b = run(&["sim", "exp1", "--seed", "1"]);
    assert!(a.status.success() && b.status.success());
    let repeat_ok = a.stdout == b.stdout && a.stdout.len() > 100;

    // CSV round trip reproduces the library pipeline exactly
    let seed = 5u64;
    let ds = experiment1_dataset(seed).unwrap();
    let mut csv = String::from("x1,x2,x3,y,I\n");
    for i in 0..ds.n_rows() {
        let row = ds.features().row(i);
        writeln!(
            csv,
            "{},{},{},{},{}",
            row[0],
            row[1],
            row[2],
            ds.outcome()[i],
            ds.context()[i]
        )
        .unwrap();
    }
    let path = std::env::temp_dir().join(format!("centropy-acc-{}.csv", std::process::id()));
    std::fs::write(&path, csv).unwrap();
    let out = run(&[
        "cda",
        "--input",
        path.to_str().unwrap(),
        "--context",
        "I",
        "--outcome",
        "y",
        "--seed",
        "5",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let spec = ExperimentSpec::new(ExperimentId::Exp1, seed);
    let reference: CiReport = run_experiment1(&spec).unwrap();
    let mut equiv_ok = true;
    for entry in &reference.entries {
        let cli_h = json["results"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["name"] == entry.name.as_str())
            .unwrap()["h_ci"]
            .as_f64()
            .unwrap();
        equiv_ok &= cli_h.to_bits() == entry.h_ci.to_bits();
    }
    std::fs::remove_file(&path).ok();

    // exit-code contract, one probe per class
    let ragged =
        std::env::temp_dir().join(format!("centropy-acc-ragged-{}.csv", std::process::id()));
    std::fs::write(&ragged, "a,b\n1,2\n3\n").unwrap();
    let good = std::env::temp_dir().join(format!("centropy-acc-good-{}.csv", std::process::id()));
    std::fs::write(&good, "a,b\n0.1,0.4\n0.9,0.2\n0.5,0.7\n0.3,0.8\n0.6,0.1\n").unwrap();
    let codes_ok = run(&[
        "ce",
        "--input",
        good.to_str().unwrap(),
        "--cols",
        "a,b",
        "--k",
        "2",
    ])
    .status
    .code()
        == Some(0)
        && run(&["ce", "--input", good.to_str().unwrap(), "--cols", "a,zz"])
            .status
            .code()
            == Some(1)
        && run(&["ce", "--input", ragged.to_str().unwrap(), "--cols", "a,b"])
            .status
            .code()
            == Some(2)
        && run(&[
            "ce",
            "--input",
            good.to_str().unwrap(),
            "--cols",
            "a,b",
            "--k",
            "0",
        ])
        .status
        .code()
            == Some(3);
    std::fs::remove_file(&ragged).ok();
    std::fs::remove_file(&good).ok();

    let pass = repeat_ok && equiv_ok && codes_ok;
    println!(
        "criterion 10 {}: repeated sim byte-identical: {repeat_ok}; CSV-dump cda equals library pipeline bit-for-bit: {equiv_ok}; exit codes 0/1/2/3: {codes_ok}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(
        pass,
        "repeat {repeat_ok}, equivalence {equiv_ok}, exit codes {codes_ok}"
    );
}

fn frank_tau_oracle(theta: f64) -> f64 {
    // tau = 1 - 4/theta (1 - D1(theta)), D1 via Simpson quadrature of
    // t / (e^t - 1) over [0, theta]
    let f = |t: f64| if t == 0.0 { 1.0 } else { t / t.exp_m1() };
    let steps = 4000;
    let h = theta / steps as f64;
    let mut acc = f(0.0) + f(theta);
    for i in 1..steps {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(i as f64 * h);
    }
    let d1 = (h / 3.0) * acc / theta;
    1.0 - 4.0 / theta * (1.0 - d1)
}
