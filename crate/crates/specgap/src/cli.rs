//! Command-line surface: argument parsing, artifact emission, and the run
//! log.
//!
//! Every command is deterministic given its flags plus the single `--seed`
//! value; artifacts are written in canonical JSON (fixed-width floats) so
//! reruns produce byte-identical files.  When `SPECGAP_LOG_DIR` is set, each
//! successful command appends a run record (command, digest of inputs, seed,
//! outputs, timestamp) to `runlog.jsonl` there; timestamps live only in that
//! log, never in artifacts.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::extremal::{build_extremal, strictify, verify_touching};
use crate::jsonio;
use crate::multidim::{
    check_ball_bound, check_cube_bound, fold, fold_positivity, NdPolyJson, TrigPolyNd,
};
use crate::search::{
    estimate_max_gap, run_experiment, rows_to_csv, ExperimentFamily, ExperimentSettings,
    SearchConfig,
};
use crate::spectrum::{closed_form_max_gap, FrequencyVector, ProgressionParams, Spectrum};
use crate::trigpoly::{dense_gap, gap_of, PolyJson, TrigPoly1D};

/// Seed used when `--seed` is absent; fixed so unseeded runs are still
/// reproducible.
pub const DEFAULT_SEED: u64 = 20260816;

const RUN_SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "specgap",
    version,
    about = "Zero-free gaps of trigonometric polynomials with prescribed spectrum"
)]
struct Cli {
    /// Master seed for every randomized operation.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the ball and cube bounds of a spectrum (and the closed-form
    /// max gap when it exists)
    Bound(BoundArgs),
    /// Build the touching extremal polynomial of a progression spectrum
    Extremal(ExtremalArgs),
    /// Zero set and largest zero-free arc of a 1-D polynomial
    Gap(GapArgs),
    /// Maximize the zero-free arc over coefficient vectors on a spectrum
    Search(SearchArgs),
    /// Batch searches over a spectrum family, reported as JSONL/CSV rows
    Experiment(ExperimentArgs),
    /// Zero-free ball/cube search for an N-D polynomial, checked against
    /// the spectrum bound
    Ndcheck(NdcheckArgs),
    /// Remove a frequency pair from an N-D polynomial by folding
    Fold(FoldArgs),
}

/// One way to name a spectrum; exactly one must be given.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct SpectrumArgs {
    /// Spectrum JSON file: {"d": 1, "lambdas": [[1], [2]]}
    #[arg(long, value_name = "FILE")]
    spectrum: Option<PathBuf>,
    /// Progression +-{N, N+b, ..., N+Kb}
    #[arg(long, value_name = "N,K,B")]
    progression: Option<String>,
    /// Squares +-{n^2 : N <= n <= N+K}
    #[arg(long, value_name = "N,K")]
    squares: Option<String>,
    /// Net +-{a0 + subset sums of a1, ...}
    #[arg(long, value_name = "A0,A1,..")]
    net: Option<String>,
    /// Random spectrum on 1..=NMAX with inclusion probability TAU
    /// (randomness from --seed)
    #[arg(long, value_name = "NMAX,TAU")]
    random: Option<String>,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    spectrum: SpectrumArgs,
    /// Write the bounds as a JSON artifact
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExtremalArgs {
    /// Progression parameters N,K,B
    #[arg(long, value_name = "N,K,B")]
    params: String,
    /// Also emit the strictified (strictly positive) variant with this shift
    #[arg(long)]
    eps: Option<f64>,
    /// Verification tolerance
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Emit a CSV of (t, f(t)) with this many samples
    #[arg(long, value_name = "N")]
    emit_samples: Option<usize>,
    /// CSV destination for --emit-samples
    #[arg(long, value_name = "FILE", default_value = "extremal_samples.csv")]
    samples_out: PathBuf,
    /// Write construction + verification as a JSON artifact
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GapArgs {
    /// 1-D polynomial JSON file: {"lambdas": [...], "re": [...], "im": [...]}
    #[arg(long, value_name = "FILE")]
    poly: PathBuf,
    /// Cross-check the rootfinder gap against dense sampling
    #[arg(long)]
    dense_check: bool,
    /// Sample count for --dense-check
    #[arg(long, default_value_t = 100_000)]
    dense_samples: usize,
    /// Write the gap report as a JSON artifact
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    spectrum: SpectrumArgs,
    #[arg(long, default_value_t = 32)]
    restarts: u32,
    /// Objective evaluations per restart
    #[arg(long, default_value_t = 2000)]
    budget: u32,
    /// Pattern-search step floor
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    /// Append the result row to this JSONL file
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    ProgressionLargeB,
    Squares,
    Random,
    Net,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Progression/squares start frequency N
    #[arg(long)]
    n: Option<u32>,
    /// Progression step b (progression-large-b requires b >= 2N)
    #[arg(long)]
    b: Option<u32>,
    /// Largest K (one row per K in 1..=k_max)
    #[arg(long, default_value_t = 4)]
    k_max: u32,
    /// Random family: frequency ceiling
    #[arg(long, default_value_t = 50)]
    nmax: u32,
    /// Random family: inclusion probability
    #[arg(long, default_value_t = 0.2)]
    tau: f64,
    /// Random family: number of draws
    #[arg(long, default_value_t = 10)]
    count: u32,
    /// Net family: largest order (one row per order)
    #[arg(long, default_value_t = 3)]
    order_max: u32,
    #[arg(long, default_value_t = 32)]
    restarts: u32,
    #[arg(long, default_value_t = 2000)]
    budget: u32,
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    /// JSONL results file (appended)
    #[arg(long, value_name = "FILE", default_value = "results.jsonl")]
    out: PathBuf,
    /// Also write this run's rows as a CSV table
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Ball,
    Cube,
}

#[derive(Args)]
struct NdcheckArgs {
    /// N-D polynomial JSON file: {"d": 2, "terms": [{"lambda": [1,0], "re": 1.0, "im": 0.0}, ...]}
    #[arg(long, value_name = "FILE")]
    poly: PathBuf,
    #[arg(long, value_enum)]
    shape: ShapeArg,
    /// Candidate-scan lattice points per axis (default: 64 for d <= 2, 24
    /// for d = 3)
    #[arg(long)]
    grid: Option<usize>,
    /// Center refinement rounds
    #[arg(long, default_value_t = 8)]
    refine: usize,
    /// Write the check report as a JSON artifact
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FoldArgs {
    /// N-D polynomial JSON file
    #[arg(long, value_name = "FILE")]
    poly: PathBuf,
    /// Frequency to remove, e.g. 1,0
    #[arg(long, value_name = "L1,L2,..")]
    nu: String,
    /// Write the folded polynomial as a JSON artifact
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Check positivity inheritance on the ball at this center, e.g. 0.1,0.2
    #[arg(long, value_name = "X1,X2,..", requires = "radius")]
    center: Option<String>,
    /// Radius of the positivity ball
    #[arg(long, requires = "center")]
    radius: Option<f64>,
    /// Interior sampling half-count for the positivity check
    #[arg(long, default_value_t = 16)]
    resolution: usize,
}

/// Entry point behind the binary: parses, dispatches, maps errors to exit
/// codes (0 ok, 2 input, 3 numerical, 4 property violation).
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("specgap: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    let seed = cli.seed;
    let (command, inputs, outputs) = match cli.command {
        Command::Bound(args) => cmd_bound(args, seed)?,
        Command::Extremal(args) => cmd_extremal(args)?,
        Command::Gap(args) => cmd_gap(args)?,
        Command::Search(args) => cmd_search(args, seed)?,
        Command::Experiment(args) => cmd_experiment(args, seed)?,
        Command::Ndcheck(args) => cmd_ndcheck(args)?,
        Command::Fold(args) => cmd_fold(args)?,
    };
    log_run(command, &inputs, seed, &outputs)
}

// --- shared plumbing ------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub command: String,
    pub inputs_digest: String,
    pub seed: u64,
    pub outputs: Value,
    /// Wall-clock seconds; only the run log carries time, artifacts never do.
    pub timestamp_unix: u64,
}

fn log_run(command: &str, inputs: &Value, seed: u64, outputs: &Value) -> Result<()> {
    let Some(dir) = std::env::var_os("SPECGAP_LOG_DIR") else {
        return Ok(());
    };
    let dir = PathBuf::from(dir);
    std::fs::create_dir_all(&dir)?;
    let record = RunRecord {
        schema_version: RUN_SCHEMA_VERSION,
        command: command.to_string(),
        inputs_digest: jsonio::digest_value(inputs)?,
        seed,
        outputs: outputs.clone(),
        timestamp_unix: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    };
    jsonio::append_jsonl(&dir.join("runlog.jsonl"), &record)
}

fn parse_nums<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<T>()
                .map_err(|_| Error::InvalidParameter(format!("cannot parse {what}: {part:?}")))
        })
        .collect()
}

fn parse_fixed<T: FromStr + Copy>(s: &str, n: usize, what: &str) -> Result<Vec<T>> {
    let v: Vec<T> = parse_nums(s, what)?;
    if v.len() != n {
        return Err(Error::InvalidParameter(format!(
            "{what} needs {n} comma-separated values, got {}",
            v.len()
        )));
    }
    Ok(v)
}

/// Builds the spectrum named by the flags; returns progression parameters
/// when that family was chosen (the closed form applies only there), plus a
/// JSON descriptor of the input for the run log.
fn resolve_spectrum(
    args: &SpectrumArgs,
    seed: u64,
) -> Result<(Spectrum, Option<ProgressionParams>, Value)> {
    if let Some(path) = &args.spectrum {
        let j: crate::spectrum::SpectrumJson = jsonio::read_json_file(path)?;
        let s = Spectrum::from_json(&j)?;
        return Ok((s, None, json!({"spectrum": {"d": j.d, "lambdas": j.lambdas}})));
    }
    if let Some(text) = &args.progression {
        let v = parse_fixed::<u32>(text, 3, "--progression")?;
        let p = ProgressionParams::new(v[0], v[1], v[2])?;
        let s = Spectrum::progression(&p);
        return Ok((s, Some(p), json!({"progression": [v[0], v[1], v[2]]})));
    }
    if let Some(text) = &args.squares {
        let v = parse_fixed::<u32>(text, 2, "--squares")?;
        let s = Spectrum::squares(v[0], v[1])?;
        return Ok((s, None, json!({"squares": [v[0], v[1]]})));
    }
    if let Some(text) = &args.net {
        let v = parse_nums::<i64>(text, "--net")?;
        let s = Spectrum::net(&v)?;
        return Ok((s, None, json!({"net": v})));
    }
    if let Some(text) = &args.random {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(Error::InvalidParameter(
                "--random needs NMAX,TAU".into(),
            ));
        }
        let nmax: u32 = parts[0]
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad NMAX {:?}", parts[0])))?;
        let tau: f64 = parts[1]
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad TAU {:?}", parts[1])))?;
        let s = Spectrum::random(nmax, tau, seed)?;
        return Ok((s, None, json!({"random": {"nmax": nmax, "tau": tau, "seed": seed}})));
    }
    Err(Error::InvalidParameter("no spectrum given".into()))
}

fn write_artifact<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    jsonio::write_json_file(path, value)?;
    println!("wrote {}", path.display());
    Ok(())
}

// --- bound ----------------------------------------------------------------------

#[derive(Serialize)]
struct RatioJson {
    num: i64,
    den: i64,
    value: f64,
}

fn ratio_json(r: num_rational::Ratio<i64>) -> RatioJson {
    RatioJson {
        num: *r.numer(),
        den: *r.denom(),
        value: *r.numer() as f64 / *r.denom() as f64,
    }
}

fn cmd_bound(args: BoundArgs, seed: u64) -> Result<(&'static str, Value, Value)> {
    let (s, params, inputs) = resolve_spectrum(&args.spectrum, seed)?;
    let closed = params
        .as_ref()
        .filter(|p| p.step_within_bound())
        .map(|p| closed_form_max_gap(p))
        .transpose()?;

    println!("spectrum: d={}, |S| = {}", s.dim(), s.len());
    println!("ball diameter bound D = {:.16}", s.ball_bound());
    println!("cube side bound     L = {:.16}", s.cube_bound());
    match &closed {
        Some(m) => println!(
            "closed-form max gap   = {}/{} = {:.16}",
            m.numer(),
            m.denom(),
            *m.numer() as f64 / *m.denom() as f64
        ),
        None => println!("closed-form max gap   : not available"),
    }

    let lambdas: Vec<Vec<i64>> = s
        .positive_half()
        .iter()
        .map(|f| f.components().to_vec())
        .collect();
    let outputs = json!({
        "d": s.dim(),
        "size": s.len(),
        "lambdas": lambdas,
        "ball_diameter_bound": s.ball_bound(),
        "cube_side_bound": s.cube_bound(),
        "closed_form_gap": closed.map(ratio_json),
    });
    if let Some(path) = &args.out {
        write_artifact(path, &outputs)?;
    }
    Ok(("bound", inputs, outputs))
}

// --- extremal -------------------------------------------------------------------

#[derive(Serialize)]
struct StrictifiedArtifact {
    eps: f64,
    positive_from: f64,
    positive_to: f64,
    poly: PolyJson,
}

#[derive(Serialize)]
struct ExtremalArtifact {
    n: u32,
    k: u32,
    b: u32,
    modulus: i64,
    zero_spacing: RatioJson,
    touching_gap: RatioJson,
    poly: PolyJson,
    verify: crate::extremal::TouchingReport,
    strictified: Option<StrictifiedArtifact>,
}

fn cmd_extremal(args: ExtremalArgs) -> Result<(&'static str, Value, Value)> {
    let v = parse_fixed::<u32>(&args.params, 3, "--params")?;
    let p = ProgressionParams::new(v[0], v[1], v[2])?;
    let e = build_extremal(&p)?;
    let report = verify_touching(&e, args.tol)?;

    println!(
        "extremal for N={}, K={}, b={}: modulus m = {}, zero spacing eta = {}/{}",
        v[0],
        v[1],
        v[2],
        p.modulus(),
        e.eta().numer(),
        e.eta().denom()
    );
    println!(
        "touching gap a = {}/{} = {:.16}",
        e.a().numer(),
        e.a().denom(),
        e.a_f64()
    );
    println!(
        "verification: ok={} (normalization {:.3e}, grid {:.3e}, min f {:.3e})",
        report.ok, report.normalization_err, report.max_grid_err, report.min_f
    );

    let strict_poly = args.eps.map(|eps| strictify(&e, eps)).transpose()?;
    let strictified = match (args.eps, &strict_poly) {
        (Some(eps), Some(g)) => {
            println!(
                "strictified with eps = {eps}: positive on [{eps:.6}, {:.6}]",
                e.a_f64() - eps
            );
            Some(StrictifiedArtifact {
                eps,
                positive_from: eps,
                positive_to: e.a_f64() - eps,
                poly: g.to_json(),
            })
        }
        _ => None,
    };

    if let Some(n) = args.emit_samples {
        if n == 0 {
            return Err(Error::InvalidParameter("--emit-samples must be positive".into()));
        }
        let sampled: &TrigPoly1D = strict_poly.as_ref().unwrap_or_else(|| e.poly());
        let mut csv = String::from("t,f\n");
        for k in 0..n {
            let t = k as f64 / n as f64;
            csv.push_str(&format!("{t:.16e},{:.16e}\n", sampled.evaluate(t)));
        }
        std::fs::write(&args.samples_out, csv)?;
        println!("wrote {}", args.samples_out.display());
    }

    let artifact = ExtremalArtifact {
        n: v[0],
        k: v[1],
        b: v[2],
        modulus: p.modulus(),
        zero_spacing: ratio_json(e.eta()),
        touching_gap: ratio_json(e.a()),
        poly: e.poly().to_json(),
        verify: report,
        strictified,
    };
    if let Some(path) = &args.out {
        write_artifact(path, &artifact)?;
    }
    let inputs = json!({"params": [v[0], v[1], v[2]], "eps": args.eps, "tol": args.tol});
    let outputs = serde_json::to_value(&artifact)?;
    Ok(("extremal", inputs, outputs))
}

// --- gap ------------------------------------------------------------------------

fn cmd_gap(args: GapArgs) -> Result<(&'static str, Value, Value)> {
    let j: PolyJson = jsonio::read_json_file(&args.poly)?;
    let f = TrigPoly1D::from_json(&j)?;
    let report = gap_of(&f)?;
    println!(
        "zeros: {} ({} touching), max gap = {:.12} starting at {:.12}",
        report.zeros.angles.len(),
        report.zeros.touching.iter().filter(|&&t| t).count(),
        report.max_gap,
        report.gap_start
    );
    if report.degenerate {
        println!("note: zero set was degenerate (duplicate points merged)");
    }

    let dense = if args.dense_check {
        let d = dense_gap(&f, args.dense_samples)?;
        let diff = (d.max_gap - report.max_gap).abs();
        println!(
            "dense check ({} samples): gap = {:.12}, |diff| = {:.3e}",
            args.dense_samples, d.max_gap, diff
        );
        Some(json!({
            "samples": args.dense_samples,
            "max_gap": d.max_gap,
            "gap_start": d.gap_start,
            "zeros_found": d.zeros.len(),
            "abs_diff": diff,
        }))
    } else {
        None
    };

    let outputs = json!({"gap": report, "dense_check": dense});
    if let Some(path) = &args.out {
        write_artifact(path, &outputs)?;
    }
    let inputs = json!({"poly": j, "dense_check": args.dense_check});
    Ok(("gap", inputs, outputs))
}

// --- search ---------------------------------------------------------------------

#[derive(Serialize)]
struct SearchRow {
    schema_version: u32,
    positive_frequencies: Vec<i64>,
    size: usize,
    ball_diameter_bound: f64,
    best_gap: f64,
    gap_start: f64,
    evals_used: u64,
    restarts: u32,
    budget: u32,
    seed: u64,
    tol: f64,
    best_coeffs: Vec<f64>,
}

fn cmd_search(args: SearchArgs, seed: u64) -> Result<(&'static str, Value, Value)> {
    let (s, params, spectrum_inputs) = resolve_spectrum(&args.spectrum, seed)?;
    let cfg = SearchConfig::new(s.clone(), args.restarts, seed, args.budget, args.tol)?;
    let result = estimate_max_gap(&cfg)?;

    println!(
        "best gap = {:.12} on arc starting at {:.12} ({} restarts, {} evals)",
        result.best_gap,
        result.gap_interval.0,
        args.restarts,
        result.evals_used
    );
    println!("ball diameter bound D = {:.12}", s.ball_bound());
    if let Some(p) = params.filter(|p| p.step_within_bound()) {
        let m = closed_form_max_gap(&p)?;
        println!(
            "closed-form max gap   = {}/{} = {:.12}",
            m.numer(),
            m.denom(),
            *m.numer() as f64 / *m.denom() as f64
        );
    }

    let row = SearchRow {
        schema_version: 1,
        positive_frequencies: s.positive_scalars()?,
        size: s.len(),
        ball_diameter_bound: s.ball_bound(),
        best_gap: result.best_gap,
        gap_start: result.gap_interval.0,
        evals_used: result.evals_used,
        restarts: args.restarts,
        budget: args.budget,
        seed,
        tol: args.tol,
        best_coeffs: result.best_coeffs.clone(),
    };
    if let Some(path) = &args.out {
        jsonio::append_jsonl(path, &row)?;
        println!("appended to {}", path.display());
    }
    let inputs = json!({
        "spectrum": spectrum_inputs,
        "restarts": args.restarts,
        "budget": args.budget,
        "tol": args.tol,
    });
    let outputs = serde_json::to_value(&row)?;
    Ok(("search", inputs, outputs))
}

// --- experiment -----------------------------------------------------------------

fn cmd_experiment(args: ExperimentArgs, seed: u64) -> Result<(&'static str, Value, Value)> {
    let need = |v: Option<u32>, flag: &str| -> Result<u32> {
        v.ok_or_else(|| Error::InvalidParameter(format!("this family requires {flag}")))
    };
    let family = match args.family {
        FamilyArg::ProgressionLargeB => ExperimentFamily::ProgressionLargeB {
            n: need(args.n, "--n")?,
            b: need(args.b, "--b")?,
            k_max: args.k_max,
        },
        FamilyArg::Squares => ExperimentFamily::Squares { n: need(args.n, "--n")?, k_max: args.k_max },
        FamilyArg::Random => ExperimentFamily::RandomSpectra {
            nmax: args.nmax,
            tau: args.tau,
            count: args.count,
        },
        FamilyArg::Net => ExperimentFamily::Nets { order_max: args.order_max },
    };
    let settings = ExperimentSettings {
        restarts: args.restarts,
        budget: args.budget,
        seed,
        tol: args.tol,
    };
    let rows = run_experiment(&family, &settings)?;

    for row in &rows {
        let closed = row
            .closed_form_gap
            .map(|v| format!("{v:.6}"))
            .unwrap_or_else(|| "-".into());
        println!(
            "{:<22} {:<18} |S|={:<3} D={:.6} closed={} estimate={:.6}",
            row.family, row.label, row.size, row.ball_diameter_bound, closed, row.estimated_gap
        );
    }
    for row in &rows {
        jsonio::append_jsonl(&args.out, row)?;
    }
    println!("appended {} rows to {}", rows.len(), args.out.display());
    if let Some(csv_path) = &args.csv {
        std::fs::write(csv_path, rows_to_csv(&rows))?;
        println!("wrote {}", csv_path.display());
    }

    let inputs = json!({
        "family": serde_json::to_value(&family)?,
        "restarts": args.restarts,
        "budget": args.budget,
        "tol": args.tol,
    });
    let outputs = serde_json::to_value(&rows)?;
    Ok(("experiment", inputs, outputs))
}

// --- ndcheck --------------------------------------------------------------------

fn cmd_ndcheck(args: NdcheckArgs) -> Result<(&'static str, Value, Value)> {
    let j: NdPolyJson = jsonio::read_json_file(&args.poly)?;
    let f = TrigPolyNd::from_json(&j)?;
    let grid = args.grid.unwrap_or(if f.dim() >= 3 { 24 } else { 64 });
    let (shape_name, check) = match args.shape {
        ShapeArg::Ball => ("ball", check_ball_bound(&f, grid, args.refine)?),
        ShapeArg::Cube => ("cube", check_cube_bound(&f, grid, args.refine)?),
    };

    let found = check.result.as_ref().expect("search ran");
    println!(
        "largest zero-free {shape_name}: extent {:.9} at {:?} (sign {})",
        check.found_extent, found.center, found.sign
    );
    println!(
        "spectrum bound = {:.9}, margin = {:+.3e}, pass = {}",
        check.bound, check.margin, check.pass
    );

    let outputs = serde_json::to_value(&check)?;
    if let Some(path) = &args.out {
        write_artifact(path, &check)?;
    }
    if !check.pass {
        return Err(Error::PropertyViolation(format!(
            "zero-free {shape_name} extent {:.9} exceeds the spectrum bound {:.9}",
            check.found_extent, check.bound
        )));
    }
    let inputs = json!({
        "poly": serde_json::to_value(&j)?,
        "shape": shape_name,
        "grid": grid,
        "refine": args.refine,
    });
    Ok(("ndcheck", inputs, outputs))
}

// --- fold -----------------------------------------------------------------------

fn cmd_fold(args: FoldArgs) -> Result<(&'static str, Value, Value)> {
    let j: NdPolyJson = jsonio::read_json_file(&args.poly)?;
    let f = TrigPolyNd::from_json(&j)?;
    let nu_components = parse_nums::<i64>(&args.nu, "--nu")?;
    let nu = FrequencyVector::new(nu_components.clone())?;
    let folded = fold(&f, &nu)?;
    println!(
        "folded out {:?}: {} terms remain{}",
        nu.components(),
        folded.terms().count(),
        if folded.is_zero() { " (identically zero)" } else { "" }
    );

    let positivity = match (&args.center, args.radius) {
        (Some(center_text), Some(radius)) => {
            let center = parse_nums::<f64>(center_text, "--center")?;
            let report = fold_positivity(&f, &nu, &center, radius, args.resolution)?;
            println!(
                "positivity inheritance: pass={} degenerate={} (min before {:.3e}, after {:.3e})",
                report.pass, report.degenerate, report.min_before, report.min_after
            );
            Some(report)
        }
        _ => None,
    };

    let folded_json = folded.to_json();
    if let Some(path) = &args.out {
        write_artifact(path, &folded_json)?;
    }
    let outputs = json!({
        "folded": serde_json::to_value(&folded_json)?,
        "positivity": serde_json::to_value(&positivity)?,
    });
    if let Some(report) = &positivity {
        if !report.pass {
            return Err(Error::PropertyViolation(
                "fold positivity inheritance failed on the shrunk ball".into(),
            ));
        }
    }
    let inputs = json!({
        "poly": serde_json::to_value(&j)?,
        "nu": nu_components,
        "center": args.center,
        "radius": args.radius,
        "resolution": args.resolution,
    });
    Ok(("fold", inputs, outputs))
}
