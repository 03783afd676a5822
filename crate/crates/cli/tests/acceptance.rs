//! End-to-end acceptance checks. Each check prints one `PASS`/`FAIL` line and
//! the process exits nonzero if any check fails.
//!
//! Run with `cargo test -p rqs-cli --test acceptance`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use num_complex::Complex64;
use rqs_core::experiment::{Method, StateSource};
use rqs_core::linalg::ComplexMatrix;
use rqs_core::metrics::{hsd, hsd_via_eigen};
use rqs_core::rng::RngStream;
use rqs_core::samplers::{gellmann_basis, hurwitz_unitary, unitarity_defect, BlochSampler};
use rqs_core::Error;

const SEED: u64 = 42;
const PAIRS: &str = "100000";
const TABLE_TOL: f64 = 0.02;

fn rqs(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_rqs"))
        .args(args)
        .output()
        .expect("failed to launch rqs");
    assert!(
        out.status.success(),
        "rqs {args:?} exited with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

static FAILURES: AtomicUsize = AtomicUsize::new(0);

fn report(name: &str, ok: bool, detail: &str) {
    println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    if !ok {
        FAILURES.fetch_add(1, Ordering::Relaxed);
    }
}

/// `(method, d, d_prime) -> (mean, std)` from stats CSV output.
type StatsTable = HashMap<(String, usize, Option<usize>), (f64, f64)>;

fn parse_stats(csv: &str) -> StatsTable {
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("method,d,d_prime,n_pairs,mean_hsd,std_hsd")
    );
    lines
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            assert_eq!(f.len(), 6, "bad row {line}");
            let d_prime = if f[2].is_empty() {
                None
            } else {
                Some(f[2].parse().unwrap())
            };
            (
                (f[0].to_string(), f[1].parse().unwrap(), d_prime),
                (f[4].parse().unwrap(), f[5].parse().unwrap()),
            )
        })
        .collect()
}

fn parse_cloud(csv: &str) -> Vec<[f64; 3]> {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,y,z"));
    lines
        .map(|line| {
            let f: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
            [f[0], f[1], f[2]]
        })
        .collect()
}

/// Table output for one and eight worker threads.
fn table_runs() -> &'static (String, String) {
    static RUNS: OnceLock<(String, String)> = OnceLock::new();
    RUNS.get_or_init(|| {
        let seed = SEED.to_string();
        let one = rqs(&[
            "--threads",
            "1",
            "table1",
            "--seed",
            &seed,
            "--pairs",
            PAIRS,
        ]);
        let eight = rqs(&[
            "--threads",
            "8",
            "table1",
            "--seed",
            &seed,
            "--pairs",
            PAIRS,
        ]);
        (one, eight)
    })
}

fn table() -> &'static StatsTable {
    static TABLE: OnceLock<StatsTable> = OnceLock::new();
    TABLE.get_or_init(|| parse_stats(&table_runs().0))
}

fn check_column(name: &str, method: &str, expected: &[(usize, f64, f64)]) {
    let t = table();
    let mut ok = true;
    let mut cells = Vec::new();
    for &(d, mean, std) in expected {
        let (m, s) = t[&(method.to_string(), d, None)];
        let cell_ok = (m - mean).abs() <= TABLE_TOL && (s - std).abs() <= TABLE_TOL;
        ok &= cell_ok;
        cells.push(format!(
            "d={d} mean {m:.4} (target {mean}) std {s:.4} (target {std}){}",
            if cell_ok { "" } else { " <- out of tolerance" }
        ));
    }
    report(name, ok, &cells.join("; "));
}

fn table_standard_column() {
    check_column(
        "table, standard column (+-0.02)",
        "standard",
        &[(2, 0.524, 0.243), (8, 0.844, 0.195), (16, 0.918, 0.179)],
    );
}

fn table_uniform_column() {
    check_column(
        "table, uniform column (+-0.02)",
        "opm-sym",
        &[(2, 0.697, 0.267), (8, 0.476, 0.042), (16, 0.346, 0.015)],
    );
}

fn table_normal_column() {
    check_column(
        "table, normal column (+-0.02)",
        "opm-normal",
        &[(2, 0.728, 0.267), (8, 0.490, 0.043), (16, 0.352, 0.016)],
    );
}

fn table_is_thread_count_independent() {
    let (one, eight) = table_runs();
    report(
        "table CSV identical for 1 and 8 threads",
        one == eight,
        &format!("{} bytes vs {} bytes", one.len(), eight.len()),
    );
}

fn concentration_of_measure() {
    let t = table();
    let col = |m: &str| -> Vec<(f64, f64)> {
        (2..=16)
            .step_by(2)
            .map(|d| t[&(m.to_string(), d, None)])
            .collect()
    };
    let sym = col("opm-sym");
    let std_ = col("standard");
    let sym_ratio = sym[7].1 / sym[0].1;
    let std_ratio = std_[7].1 / std_[0].1;
    let sym_dec = sym.windows(2).all(|w| w[1].0 < w[0].0);
    let std_inc = std_.windows(2).all(|w| w[1].0 > w[0].0);
    report(
        "concentration, opm-sym std ratio d16/d2 < 0.08",
        sym_ratio < 0.08,
        &format!("{sym_ratio:.4}"),
    );
    report(
        "concentration, standard std ratio d16/d2 > 0.6",
        std_ratio > 0.6,
        &format!("{std_ratio:.4}"),
    );
    report(
        "concentration, opm-sym mean decreasing over d = 2..16",
        sym_dec,
        &format!("{:?}", sym.iter().map(|c| c.0).collect::<Vec<_>>()),
    );
    report(
        "concentration, standard mean increasing over d = 2..16",
        std_inc,
        &format!("{:?}", std_.iter().map(|c| c.0).collect::<Vec<_>>()),
    );
}

fn unit_interval_domain_pathology() {
    let cloud = parse_cloud(&rqs(&[
        "bloch-cloud",
        "--method",
        "opm-unit",
        "--states",
        "10000",
    ]));
    let bad = cloud.iter().filter(|v| v[0] < -1e-12).count();
    report(
        "opm-unit qubits have x >= -1e-12",
        cloud.len() == 10_000 && bad == 0,
        &format!("{bad} of {} below threshold", cloud.len()),
    );
}

fn symmetric_domain_is_centered() {
    let cloud = parse_cloud(&rqs(&[
        "bloch-cloud",
        "--method",
        "opm-sym",
        "--states",
        "100000",
    ]));
    let n = cloud.len() as f64;
    let mean: Vec<f64> = (0..3)
        .map(|k| cloud.iter().map(|v| v[k]).sum::<f64>() / n)
        .collect();
    report(
        "opm-sym qubit Bloch mean within 0 +- 0.01",
        cloud.len() == 100_000 && mean.iter().all(|m| m.abs() <= 0.01),
        &format!(
            "mean (x, y, z) = ({:.4}, {:.4}, {:.4})",
            mean[0], mean[1], mean[2]
        ),
    );
}

fn bures_std_ratio() {
    let t = parse_stats(&rqs(&["bures-sweep", "--dims", "2,16", "--pairs", PAIRS]));
    let (_, s2) = t[&("bures".to_string(), 2, None)];
    let (_, s16) = t[&("bures".to_string(), 16, None)];
    let ratio = s16 / s2;
    report(
        "bures std ratio d16/d2 = 0.08 +- 0.02",
        (ratio - 0.08).abs() <= 0.02,
        &format!("{ratio:.4} (std {s2:.4} -> {s16:.4})"),
    );
}

fn ginibre_left_dimension_monotonicity() {
    let mut ok = true;
    let mut detail = Vec::new();
    for d in [2usize, 4, 8] {
        let left = format!("{},{},{}", d, 2 * d, 4 * d);
        let t = parse_stats(&rqs(&[
            "ginibre-sweep",
            "--dims",
            &d.to_string(),
            "--dims-left",
            &left,
            "--pairs",
            PAIRS,
        ]));
        let cells: Vec<(f64, f64)> = [d, 2 * d, 4 * d]
            .iter()
            .map(|&dp| t[&("ginibre".to_string(), d, Some(dp))])
            .collect();
        let dec = cells.windows(2).all(|w| w[1].0 < w[0].0 && w[1].1 < w[0].1);
        ok &= dec;
        detail.push(format!(
            "d={d}: {}",
            cells
                .iter()
                .map(|(m, s)| format!("({m:.4}, {s:.4})"))
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    report(
        "ginibre mean and std strictly decrease over d' = d, 2d, 4d",
        ok,
        &detail.join("; "),
    );
}

fn invariant_defect(rho: &ComplexMatrix) -> (f64, f64, f64) {
    let tr = rho.trace();
    (
        rho.hermiticity_defect(),
        (tr.re - 1.0).abs().max(tr.im.abs()),
        rho.min_eigenvalue().unwrap(),
    )
}

fn density_invariants_all_methods() {
    let draws = 10_000u64;
    let mut ok = true;
    let mut worst = (0.0f64, 0.0f64, f64::INFINITY);
    let mut notes = Vec::new();
    for method in Method::ALL {
        for d in [2usize, 4, 8, 16] {
            if method == Method::Bloch && d > 2 {
                continue;
            }
            let d_prime = (method == Method::Ginibre).then_some(2 * d);
            let source = StateSource::new(method, d, d_prime, 1_000_000).unwrap();
            let mut rng = RngStream::new(SEED, (d as u64) << 8 | method as u64);
            for _ in 0..draws {
                let rho = source.sample(&mut rng).unwrap();
                let (h, t, e) = invariant_defect(rho.matrix());
                ok &= h <= 1e-12 && t <= 1e-12 && e >= -1e-10;
                worst = (worst.0.max(h), worst.1.max(t), worst.2.min(e));
            }
        }
    }
    // the rejection sampler is usable at d = 3 and hits its cap above that
    let sampler = BlochSampler::new(3, 1_000_000).unwrap();
    let mut rng = RngStream::new(SEED, 3);
    for _ in 0..draws {
        let (rho, _) = sampler.sample(&mut rng).unwrap();
        let (h, t, e) = invariant_defect(rho.matrix());
        ok &= h <= 1e-12 && t <= 1e-12 && e >= -1e-10;
        worst = (worst.0.max(h), worst.1.max(t), worst.2.min(e));
    }
    for d in [4usize, 8, 16] {
        let source = StateSource::new(Method::Bloch, d, None, 1_000_000).unwrap();
        match source.sample(&mut RngStream::new(SEED, d as u64)) {
            Err(Error::RejectionExhausted { attempts, .. }) => {
                notes.push(format!("bloch d={d} exhausted after {attempts} attempts"))
            }
            Ok(rho) => {
                let (h, t, e) = invariant_defect(rho.matrix());
                ok &= h <= 1e-12 && t <= 1e-12 && e >= -1e-10;
                notes.push(format!("bloch d={d} accepted"));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("bloch d={d}: unexpected error {e}"));
            }
        }
    }
    report(
        "density invariants on 1e4 draws per method and d",
        ok,
        &format!(
            "max hermiticity {:.1e}, max trace error {:.1e}, min eigenvalue {:.1e}; {}",
            worst.0,
            worst.1,
            worst.2,
            notes.join(", ")
        ),
    );
}

fn unitarity() {
    let mut rng = RngStream::new(SEED, 0);
    let mut worst = 0.0f64;
    for d in 1..=16 {
        for _ in 0..500 {
            worst = worst.max(unitarity_defect(&hurwitz_unitary(&mut rng, d).unwrap()));
        }
    }
    report(
        "unitarity defect <= 1e-10",
        worst <= 1e-10,
        &format!("max {worst:.2e}"),
    );
}

fn hsd_two_paths_agree() {
    let mut worst = 0.0f64;
    let mut k = 0u64;
    for method in Method::ALL {
        let dims: &[usize] = if method == Method::Bloch {
            &[2]
        } else {
            &[2, 4, 8, 16]
        };
        for &d in dims {
            let d_prime = (method == Method::Ginibre).then_some(2 * d);
            let source = StateSource::new(method, d, d_prime, 1_000_000).unwrap();
            for _ in 0..1000 {
                let a = source.sample(&mut RngStream::new(7, 2 * k)).unwrap();
                let b = source.sample(&mut RngStream::new(7, 2 * k + 1)).unwrap();
                k += 1;
                worst = worst.max((hsd(&a, &b).unwrap() - hsd_via_eigen(&a, &b).unwrap()).abs());
            }
        }
    }
    report(
        "entry-wise and spectral HSD agree within 1e-9",
        worst <= 1e-9,
        &format!("max difference {worst:.2e} over {k} pairs"),
    );
}

fn gellmann_orthogonality() {
    let mut worst = 0.0f64;
    for d in 2..=8 {
        let g = gellmann_basis(d).unwrap();
        let gens = g.generators();
        for (a, ga) in gens.iter().enumerate() {
            for (b, gb) in gens.iter().enumerate() {
                let tr = ga.multiply(gb).unwrap().trace();
                let expect = if a == b { 2.0 } else { 0.0 };
                worst = worst.max((tr - Complex64::new(expect, 0.0)).norm());
            }
        }
    }
    report(
        "Gell-Mann Tr(l_a l_b) = 2 delta_ab within 1e-12 for d <= 8",
        worst <= 1e-12,
        &format!("max deviation {worst:.2e}"),
    );
}

fn bloch_qubit_acceptance_rate() {
    let sampler = BlochSampler::new(2, 1_000_000).unwrap();
    let mut rng = RngStream::new(SEED, 0);
    let (mut accepted, mut attempts) = (0u64, 0u64);
    while attempts < 100_000 {
        attempts += sampler.sample(&mut rng).unwrap().1;
        accepted += 1;
    }
    let rate = accepted as f64 / attempts as f64;
    report(
        "qubit rejection acceptance = pi/6 +- 0.01",
        (rate - PI / 6.0).abs() <= 0.01,
        &format!(
            "{rate:.4} over {attempts} attempts (pi/6 = {:.4})",
            PI / 6.0
        ),
    );
}

fn eigensolver_identities() {
    let mut rng = RngStream::new(SEED, 0);
    let mut worst = 0.0f64;
    for k in 0..1000 {
        let d = 1 + k % 16;
        let a = ComplexMatrix::from_fn(d, d, |_, _| Complex64::new(rng.normal(), rng.normal()));
        let h = a.hermitian_part();
        let spec = h.hermitian_eigenvalues().unwrap();
        worst = worst
            .max((spec.sum() - h.trace().re).abs())
            .max((spec.sum_squares() - h.hs_norm_sqr()).abs());
    }
    report(
        "eigenvalue sum = trace and square sum = HS norm^2 within 1e-9",
        worst <= 1e-9,
        &format!("max deviation {worst:.2e} over 1000 matrices"),
    );
}

fn main() -> ExitCode {
    let checks: [(&str, fn()); 15] = [
        ("table_standard_column", table_standard_column),
        ("table_uniform_column", table_uniform_column),
        ("table_normal_column", table_normal_column),
        (
            "table_is_thread_count_independent",
            table_is_thread_count_independent,
        ),
        ("concentration_of_measure", concentration_of_measure),
        (
            "unit_interval_domain_pathology",
            unit_interval_domain_pathology,
        ),
        ("symmetric_domain_is_centered", symmetric_domain_is_centered),
        ("bures_std_ratio", bures_std_ratio),
        (
            "ginibre_left_dimension_monotonicity",
            ginibre_left_dimension_monotonicity,
        ),
        (
            "density_invariants_all_methods",
            density_invariants_all_methods,
        ),
        ("unitarity", unitarity),
        ("hsd_two_paths_agree", hsd_two_paths_agree),
        ("gellmann_orthogonality", gellmann_orthogonality),
        ("bloch_qubit_acceptance_rate", bloch_qubit_acceptance_rate),
        ("eigensolver_identities", eigensolver_identities),
    ];
    for (name, check) in checks {
        if std::panic::catch_unwind(check).is_err() {
            report(name, false, "check panicked");
        }
    }
    let failed = FAILURES.load(Ordering::Relaxed);
    println!("acceptance: {failed} failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
