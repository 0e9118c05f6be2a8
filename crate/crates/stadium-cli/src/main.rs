//! Command-line front end for the stadium conformal-map solver: solves,
//! convergence tables, aspect-ratio sweeps, Monte Carlo checks, the exact
//! rectangle formula, and mesh exports.
//!
//! Data goes to the named output file or standard output; everything
//! else (progress, measures, warnings) goes to standard error. Output
//! files are byte-stable for identical flags; the accompanying manifest
//! also records the wall-clock duration, which is not.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use stadium_core::{
    monte_carlo, rect_end_measure, solve, DiskMap, DomainGeometry, DomainKind, McConfig, MeshSpec,
    SymmConfig,
};

#[derive(Parser)]
#[command(name = "stadium", version, about = "Harmonic measure of stadium ends via Symm's integral equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Shape {
    Stadium,
    Rect,
}

impl Shape {
    fn kind(self) -> DomainKind {
        match self {
            Shape::Stadium => DomainKind::Stadium,
            Shape::Rect => DomainKind::Rectangle,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve the collocation system and write the density solution JSON.
    Solve(SolveArgs),
    /// Tabulate the end-cap measure over a list of expansion degrees.
    Convergence(ConvergenceArgs),
    /// Sweep the aspect ratio, comparing stadium and exact rectangle.
    Sweep(SweepArgs),
    /// Estimate the end-cap measure by random walks.
    Mc(McArgs),
    /// Print the exact rectangle end-cap measure.
    Rect(RectArgs),
    /// Export an image mesh of concentric circles and rays under the map.
    Mesh(MeshArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Domain shape.
    #[arg(long, value_enum, default_value = "stadium")]
    shape: Shape,
    /// Half-length of the straight section.
    #[arg(long = "L", default_value_t = 1.0)]
    l: f64,
    /// Chebyshev expansion degree per arc (at least 4).
    #[arg(long, default_value_t = 256)]
    nu: usize,
    /// Node-doubling stop threshold for the kernel quadrature.
    #[arg(long, default_value_t = 1e-10)]
    quadrature_tol: f64,
    /// Output path for the solution JSON.
    #[arg(long, default_value = "solution.json")]
    out: PathBuf,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[arg(long, value_enum, default_value = "stadium")]
    shape: Shape,
    #[arg(long = "L", default_value_t = 1.0)]
    l: f64,
    /// Comma-separated expansion degrees, one CSV row each.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "64,100,128,256,300,350,500,512,800,1000,1200"
    )]
    nu_list: Vec<usize>,
    /// Output CSV path; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long = "L-min", default_value_t = 0.5)]
    l_min: f64,
    #[arg(long = "L-max", default_value_t = 2.0)]
    l_max: f64,
    /// Number of rows, spaced evenly in L.
    #[arg(long, default_value_t = 7)]
    steps: usize,
    #[arg(long, default_value_t = 200)]
    nu: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct McArgs {
    /// Stadium half-length.
    #[arg(long = "L", default_value_t = 1.0)]
    l: f64,
    /// Number of walks.
    #[arg(long = "N", default_value_t = 1_000_000)]
    n: u64,
    /// Absorption distance from the boundary.
    #[arg(long, default_value_t = 1e-3)]
    h: f64,
    /// Random-stream seed; identical seeds reproduce results bitwise.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RectArgs {
    #[arg(long = "L", default_value_t = 1.0)]
    l: f64,
}

#[derive(Args)]
struct MeshArgs {
    #[arg(long = "L", default_value_t = 1.0)]
    l: f64,
    #[arg(long, default_value_t = 256)]
    nu: usize,
    /// Concentric image circles.
    #[arg(long, default_value_t = 8)]
    circles: usize,
    /// Radial lines through the center.
    #[arg(long, default_value_t = 16)]
    rays: usize,
    /// Points sampled along each curve.
    #[arg(long, default_value_t = 64)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Accompanies every file output: what produced it and how long it took.
#[derive(Serialize)]
struct RunManifest {
    command: &'static str,
    params: serde_json::Value,
    version: &'static str,
    duration_seconds: f64,
}

fn write_manifest(out: &Path, command: &'static str, params: serde_json::Value, t0: Instant) -> Result<()> {
    let manifest = RunManifest {
        command,
        params,
        version: env!("CARGO_PKG_VERSION"),
        duration_seconds: t0.elapsed().as_secs_f64(),
    };
    let mut path = out.as_os_str().to_owned();
    path.push(".manifest.json");
    fs::write(&path, serde_json::to_string_pretty(&manifest)?)
        .with_context(|| format!("writing manifest next to {}", out.display()))?;
    Ok(())
}

/// Data sink honoring the file-or-stdout contract, with a manifest
/// accompanying every file.
fn emit(out: Option<&Path>, data: &str, command: &'static str, params: serde_json::Value, t0: Instant) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, data).with_context(|| format!("writing {}", path.display()))?;
            write_manifest(path, command, params, t0)?;
        }
        None => print!("{data}"),
    }
    Ok(())
}

/// 15 significant digits: enough to round-trip binary64 in practice and
/// keeps CSV columns aligned.
fn sig15(x: f64) -> String {
    format!("{x:.14e}")
}

fn cmd_solve(a: &SolveArgs) -> Result<()> {
    let t0 = Instant::now();
    let geom = DomainGeometry::new(a.shape.kind(), a.l)?;
    let cfg = SymmConfig::new(a.nu).with_quadrature_tol(a.quadrature_tol);
    let sol = solve(&geom, &cfg)?;
    eprintln!(
        "end-cap measure p = {:.9}  (residual {:.3e}, {:.1}s)",
        sol.end_cap_measure(),
        sol.residual_norm,
        t0.elapsed().as_secs_f64()
    );
    fs::write(&a.out, sol.to_json_string()?)
        .with_context(|| format!("writing {}", a.out.display()))?;
    let params = serde_json::json!({
        "shape": match a.shape { Shape::Stadium => "stadium", Shape::Rect => "rect" },
        "L": a.l,
        "nu": a.nu,
        "quadrature_tol": a.quadrature_tol,
        "out": a.out.display().to_string(),
    });
    write_manifest(&a.out, "solve", params, t0)
}

fn cmd_convergence(a: &ConvergenceArgs) -> Result<()> {
    let t0 = Instant::now();
    if a.nu_list.is_empty() {
        bail!("nu-list must name at least one degree");
    }
    let geom = DomainGeometry::new(a.shape.kind(), a.l)?;
    let mut csv = String::from("nu,p\n");
    for &nu in &a.nu_list {
        let row_start = Instant::now();
        let sol = solve(&geom, &SymmConfig::new(nu))?;
        let p = sol.end_cap_measure();
        eprintln!("nu {nu:5}: p = {p:.9}  ({:.1}s)", row_start.elapsed().as_secs_f64());
        writeln!(csv, "{nu},{}", sig15(p))?;
    }
    let params = serde_json::json!({
        "shape": match a.shape { Shape::Stadium => "stadium", Shape::Rect => "rect" },
        "L": a.l,
        "nu_list": a.nu_list,
    });
    emit(a.out.as_deref(), &csv, "convergence", params, t0)
}

fn cmd_sweep(a: &SweepArgs) -> Result<()> {
    let t0 = Instant::now();
    if a.steps < 2 {
        bail!("sweep needs at least 2 steps");
    }
    if !(a.l_min.is_finite() && a.l_max > a.l_min && a.l_min > 0.0) {
        bail!("sweep range must satisfy 0 < L-min < L-max");
    }
    let mut csv = String::from("L,p_stadium,p_rect_exact\n");
    for i in 0..a.steps {
        let l = a.l_min + (a.l_max - a.l_min) * i as f64 / (a.steps - 1) as f64;
        let geom = DomainGeometry::stadium(l)?;
        let p_stadium = solve(&geom, &SymmConfig::new(a.nu))?.end_cap_measure();
        let p_rect = rect_end_measure(l, 1e-12)?;
        eprintln!("L {l:.4}: stadium {p_stadium:.7}, rectangle {p_rect:.7}");
        writeln!(csv, "{},{},{}", sig15(l), sig15(p_stadium), sig15(p_rect))?;
    }
    let params = serde_json::json!({
        "L_min": a.l_min, "L_max": a.l_max, "steps": a.steps, "nu": a.nu,
    });
    emit(a.out.as_deref(), &csv, "sweep", params, t0)
}

fn cmd_mc(a: &McArgs) -> Result<()> {
    let t0 = Instant::now();
    let geom = DomainGeometry::stadium(a.l)?;
    let result = monte_carlo::run(&geom, &McConfig::new(a.n, a.h, a.seed))?;
    eprintln!(
        "p_hat = {:.6} +- {:.1e}  ({} walks, {:.1}s)",
        result.p_hat,
        result.std_error,
        result.trials,
        t0.elapsed().as_secs_f64()
    );
    let mut data = result.report_json();
    data.push('\n');
    let params = serde_json::json!({ "L": a.l, "N": a.n, "h": a.h, "seed": a.seed });
    emit(a.out.as_deref(), &data, "mc", params, t0)
}

fn cmd_rect(a: &RectArgs) -> Result<()> {
    let p = rect_end_measure(a.l, 1e-12)?;
    println!("{p}");
    Ok(())
}

fn cmd_mesh(a: &MeshArgs) -> Result<()> {
    let t0 = Instant::now();
    let geom = DomainGeometry::stadium(a.l)?;
    let sol = solve(&geom, &SymmConfig::new(a.nu))?;
    let map = DiskMap::new(sol)?;
    let spec = MeshSpec {
        radial_lines: a.rays,
        circles: a.circles,
        samples: a.samples,
    };
    let rows = map.export_mesh(&spec)?;
    let mut csv = String::from("z_re,z_im,f_re,f_im,curve_id\n");
    for row in &rows {
        writeln!(
            csv,
            "{},{},{},{},{}",
            sig15(row.z.re),
            sig15(row.z.im),
            sig15(row.f.re),
            sig15(row.f.im),
            row.curve_id
        )?;
    }
    eprintln!(
        "mapped {} mesh points on {} curves ({:.1}s)",
        rows.len(),
        a.circles + a.rays,
        t0.elapsed().as_secs_f64()
    );
    let params = serde_json::json!({
        "L": a.l, "nu": a.nu, "circles": a.circles, "rays": a.rays, "samples": a.samples,
    });
    emit(a.out.as_deref(), &csv, "mesh", params, t0)
}

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Convergence(a) => cmd_convergence(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Mc(a) => cmd_mc(a),
        Command::Rect(a) => cmd_rect(a),
        Command::Mesh(a) => cmd_mesh(a),
    };
    if let Err(err) = outcome {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
