//! End-to-end checks of the `stadium` binary: output contracts, exit
//! codes, byte stability, and cross-command consistency.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicU32, Ordering};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stadium"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should spawn")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Fresh scratch path; the test process id keeps parallel test binaries
/// apart, the counter keeps tests within one binary apart.
fn scratch(name: &str) -> PathBuf {
    static COUNTER: AtomicU32 = AtomicU32::new(0);
    let n = COUNTER.fetch_add(1, Ordering::Relaxed);
    let dir = std::env::temp_dir().join(format!(
        "stadium-cli-test-{}-{n}",
        std::process::id()
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn undersized_expansion_degree_exits_nonzero() {
    let out = run(&["solve", "--shape", "stadium", "--L", "1", "--nu", "2"]);
    assert!(!out.status.success());
    assert!(!out.stderr.is_empty(), "diagnostic should go to stderr");
    assert!(out.stdout.is_empty(), "no data on failure");
}

#[test]
fn solve_writes_solution_json_and_manifest() {
    let path = scratch("square.json");
    let out = run(&[
        "solve",
        "--shape",
        "rect",
        "--L",
        "1",
        "--nu",
        "100",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "data goes to the file, not stdout");

    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["kind"], "Rectangle");
    assert_eq!(doc["L"], 1.0);
    assert_eq!(doc["nu"], 100);
    assert_eq!(doc["phi"].as_array().unwrap().len(), 4);
    assert_eq!(doc["phi"][0].as_array().unwrap().len(), 101);
    assert!(doc["residual_norm"].as_f64().unwrap() < 1e-6);
    assert!(doc["quadrature_tol"].as_f64().unwrap() > 0.0);

    // Measure reproduces the square value through the written file.
    let pi = std::f64::consts::PI;
    let p = pi * doc["phi"][1][0].as_f64().unwrap() + pi * doc["phi"][3][0].as_f64().unwrap();
    assert!((p - 0.5).abs() <= 1e-8, "square measure {p}");

    let manifest_path = format!("{}.manifest.json", path.display());
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(manifest_path).unwrap()).unwrap();
    assert_eq!(manifest["command"], "solve");
    assert_eq!(manifest["params"]["nu"], 100);
    assert_eq!(manifest["version"], env!("CARGO_PKG_VERSION"));
    assert!(manifest["duration_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn solve_output_is_byte_stable() {
    let a = scratch("first.json");
    let b = scratch("second.json");
    for path in [&a, &b] {
        let out = run(&[
            "solve",
            "--shape",
            "stadium",
            "--L",
            "0.8",
            "--nu",
            "24",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(
        std::fs::read(&a).unwrap(),
        std::fs::read(&b).unwrap(),
        "identical flags must produce identical bytes"
    );
}

#[test]
fn rect_prints_exact_half_for_the_square() {
    assert_eq!(stdout_of(&["rect", "--L", "1"]), "0.5\n");
}

#[test]
fn rect_formula_matches_the_collocation_solver() {
    let printed = stdout_of(&["rect", "--L", "0.75"]);
    let exact: f64 = printed.trim().parse().unwrap();

    let path = scratch("rect075.json");
    let out = run(&[
        "solve",
        "--shape",
        "rect",
        "--L",
        "0.75",
        "--nu",
        "300",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let pi = std::f64::consts::PI;
    let p = pi * doc["phi"][1][0].as_f64().unwrap() + pi * doc["phi"][3][0].as_f64().unwrap();
    assert!((p - exact).abs() <= 1e-6, "solver {p} vs formula {exact}");
}

#[test]
fn monte_carlo_stdout_is_reproducible_per_seed() {
    let args = ["mc", "--L", "1", "--N", "2000", "--h", "1e-2", "--seed", "42"];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second);

    let doc: serde_json::Value = serde_json::from_str(&first).unwrap();
    for field in ["N", "h", "seed", "hits", "p_hat", "std_error"] {
        assert!(doc.get(field).is_some(), "missing field {field}");
    }
    assert_eq!(doc["N"], 2000);
    assert_eq!(doc["seed"], 42);

    let different = stdout_of(&["mc", "--L", "1", "--N", "2000", "--h", "1e-2", "--seed", "43"]);
    assert_ne!(first, different, "a new seed must draw new walks");
}

#[test]
fn mesh_emits_one_row_per_sample_and_one_id_per_curve() {
    let csv = stdout_of(&[
        "mesh", "--L", "1", "--nu", "16", "--circles", "3", "--rays", "4", "--samples", "5",
    ]);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "z_re,z_im,f_re,f_im,curve_id");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), (3 + 4) * 5);
    let mut ids: Vec<usize> = rows
        .iter()
        .map(|r| r.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids, (0..7).collect::<Vec<_>>());
}

#[test]
fn convergence_tabulates_one_row_per_degree() {
    let csv = stdout_of(&["convergence", "--nu-list", "16,24"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "nu,p");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    let mut last = 0.0;
    for (row, nu) in rows.iter().zip([16, 24]) {
        let (n, p) = row.split_once(',').unwrap();
        assert_eq!(n.parse::<usize>().unwrap(), nu);
        let p: f64 = p.parse().unwrap();
        assert!(p > 0.27 && p < 0.29, "implausible measure {p}");
        assert!(p > last, "measure should grow with nu here");
        last = p;
    }
}

#[test]
fn sweep_rows_are_sorted_and_rectangle_dominates() {
    let csv = stdout_of(&[
        "sweep", "--L-min", "0.5", "--L-max", "2", "--steps", "3", "--nu", "16",
    ]);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "L,p_stadium,p_rect_exact");
    let mut prev_l = f64::NEG_INFINITY;
    let mut rows = 0;
    for row in lines {
        let cols: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        let (l, p_stadium, p_rect) = (cols[0], cols[1], cols[2]);
        assert!(l > prev_l, "rows must be sorted by L");
        assert!(
            p_rect > p_stadium,
            "rectangle ends must carry more measure at L = {l}"
        );
        prev_l = l;
        rows += 1;
    }
    assert_eq!(rows, 3);
}
