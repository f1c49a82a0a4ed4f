//! The `gradbench` command line: run single cases, full benchmark
//! matrices, initial-point sweeps, plots, and the grid oracle.
//!
//! Exit codes: `0` when the requested work succeeded (for `run`, when the
//! method converged), `2` when a run finished without converging, and `1`
//! for usage errors and any failure to read, compute, or write.
//! Everything is deterministic: the same invocation produces the same
//! bytes on stdout and in every artifact.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gradbench_core::bench::{
    default_start, default_sweep_rect, grid_argmin_oracle, distance_error_series,
    run_matrix, sensitivity_sweep, value_error_series, BenchCase, Sampling,
};
use gradbench_core::objectives::by_name;
use gradbench_core::trace::Trace;
use gradbench_core::{LineSearchKind, Method, OptimizerConfig, Rect, Vec2};

use crate::contour::ContourGrid;
use crate::csv::{read_sweep_csv, write_summary_csv, write_sweep_csv, write_trace_csv};
use crate::error::ReportError;
use crate::json::{read_trace_json, write_trace_json};
use crate::svg::{
    contour_plot, error_series_plot, sweep_scatter_plot, write_svg, Series, Trajectory,
};

/// The objective registry, in the order `all` expands to.
pub const FUNCTIONS: [&str; 4] = ["rosenbrock", "spring", "ackley", "himmelblau"];

#[derive(Parser)]
#[command(
    name = "gradbench",
    version,
    about = "Benchmark two-dimensional gradient-based minimization methods"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one method on one function from one start and save its trace.
    Run(RunArgs),
    /// Run a function x method matrix from the standard starts.
    Matrix(MatrixArgs),
    /// Minimize from a rectangle of starts and label the basins reached.
    Sweep(SweepArgs),
    /// Render saved traces or sweeps as an SVG plot.
    Plot(PlotArgs),
    /// Certify global minima by dense grid scanning, independent of any
    /// gradient code.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Objective: rosenbrock, spring, ackley, or himmelblau.
    #[arg(long)]
    function: String,
    /// Method: sd, cg-fr, cg-pr, newton, dfp, bfgs, or lm.
    #[arg(long)]
    method: String,
    /// Start point, written "x,y" (default: the function's standard start).
    #[arg(long)]
    x0: Option<String>,
    /// Gradient-norm tolerance (default 1e-6).
    #[arg(long)]
    tol: Option<f64>,
    /// Iteration cap (default 2000).
    #[arg(long)]
    max_iter: Option<usize>,
    /// Step policy: golden, armijo, or unit (default: the method's own).
    #[arg(long)]
    line_search: Option<String>,
    /// Output directory (default: $GRADBENCH_OUT, else ./out).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Artifacts to write: json, csv, or both.
    #[arg(long, default_value = "both")]
    format: String,
}

#[derive(Args)]
struct MatrixArgs {
    /// One objective name, or "all".
    #[arg(long, default_value = "all")]
    function: String,
    /// Comma-separated method names, or "all" for the standard six
    /// (sd, cg-fr, cg-pr, newton, bfgs, lm).
    #[arg(long, default_value = "all")]
    methods: String,
    /// Output directory (default: $GRADBENCH_OUT, else ./out).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Objective: rosenbrock, spring, ackley, or himmelblau.
    #[arg(long)]
    function: String,
    /// Method: sd, cg-fr, cg-pr, newton, dfp, bfgs, or lm.
    #[arg(long)]
    method: String,
    /// Center of the start rectangle, written "x,y". When neither
    /// --center nor --size is given, the sweep uses the function's
    /// standard start window.
    #[arg(long)]
    center: Option<String>,
    /// Width and height of the start rectangle, written "w,h"
    /// (default "10,10").
    #[arg(long)]
    size: Option<String>,
    /// Number of starts.
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Start placement: lattice or uniform.
    #[arg(long, default_value = "lattice")]
    sampling: String,
    /// Seed for uniform sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also render the basin scatter next to the CSV.
    #[arg(long)]
    plot: bool,
    /// Output directory (default: $GRADBENCH_OUT, else ./out).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// Trace files to draw (repeatable); used by contour and errors.
    #[arg(long)]
    trace: Vec<PathBuf>,
    /// Sweep CSV to draw; used by scatter.
    #[arg(long)]
    sweep: Option<PathBuf>,
    /// Plot kind: contour, errors, or scatter.
    #[arg(long)]
    kind: String,
    /// Error measure for --kind errors: value or distance.
    #[arg(long, default_value = "value")]
    series: String,
    /// Output SVG path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    /// One objective name, or "all".
    #[arg(long)]
    function: String,
    /// Samples per axis of the first scan.
    #[arg(long, default_value_t = 801)]
    resolution: usize,
    /// Zoom-and-rescan rounds the refinement runs per candidate.
    #[arg(long, default_value_t = 6)]
    rounds: usize,
}

/// Parse arguments and execute; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    1
                }
            };
        }
    };
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(&args),
        Command::Matrix(args) => cmd_matrix(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Plot(args) => cmd_plot(&args),
        Command::Oracle(args) => cmd_oracle(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn parse_pair(text: &str, what: &str) -> Result<(f64, f64), ReportError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() == 2 {
        if let (Ok(a), Ok(b)) =
            (parts[0].trim().parse::<f64>(), parts[1].trim().parse::<f64>())
        {
            if a.is_finite() && b.is_finite() {
                return Ok((a, b));
            }
        }
    }
    Err(ReportError::Bench(format!("{what} must be two finite numbers \"a,b\", got {text:?}")))
}

fn parse_line_search(name: &str) -> Result<LineSearchKind, ReportError> {
    match name {
        "golden" => Ok(LineSearchKind::ExactGoldenSection),
        "armijo" => Ok(LineSearchKind::BacktrackingArmijo),
        "unit" => Ok(LineSearchKind::FixedUnitStep),
        other => Err(ReportError::Bench(format!(
            "unknown line search {other:?}; expected golden, armijo, or unit"
        ))),
    }
}

fn parse_method(name: &str) -> Result<Method, ReportError> {
    Method::from_name(name).ok_or_else(|| {
        ReportError::Bench(format!(
            "unknown method {name:?}; expected one of sd, cg-fr, cg-pr, newton, dfp, bfgs, lm"
        ))
    })
}

fn check_function(name: &str) -> Result<(), ReportError> {
    if by_name(name).is_some() {
        Ok(())
    } else {
        Err(ReportError::Bench(format!(
            "unknown function {name:?}; expected one of {}",
            FUNCTIONS.join(", ")
        )))
    }
}

fn out_dir(flag: &Option<PathBuf>) -> PathBuf {
    flag.clone()
        .or_else(|| env::var_os("GRADBENCH_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"))
}

fn ensure_dir(dir: &Path) -> Result<(), ReportError> {
    fs::create_dir_all(dir).map_err(|e| ReportError::io(dir, e))
}

fn summary_line(trace: &Trace) -> String {
    let end = trace.final_point();
    let value = trace
        .final_record()
        .map(|r| format!("{:.6e}", r.f_value))
        .unwrap_or_else(|| String::from("nan"));
    format!(
        "{} {}: {} after {} iterations, f = {} at ({}, {}), evals f/grad/hess = {}/{}/{}",
        trace.function_name,
        trace.method,
        trace.termination,
        trace.iterations(),
        value,
        end.x,
        end.y,
        trace.counters.n_f,
        trace.counters.n_grad,
        trace.counters.n_hess,
    )
}

fn cmd_run(args: &RunArgs) -> Result<i32, ReportError> {
    check_function(&args.function)?;
    let method = parse_method(&args.method)?;
    let (x, y) = match &args.x0 {
        Some(text) => parse_pair(text, "--x0")?,
        None => {
            let p = default_start(&args.function)
                .ok_or_else(|| ReportError::Bench(format!("no standard start for {:?}", args.function)))?;
            (p.x, p.y)
        }
    };

    let mut cfg = OptimizerConfig::new(method);
    if let Some(tol) = args.tol {
        cfg.grad_tol = tol;
    }
    if let Some(max_iter) = args.max_iter {
        cfg.max_iter = max_iter;
    }
    if let Some(ls) = &args.line_search {
        cfg.line_search = parse_line_search(ls)?;
    }
    cfg.validate().map_err(|e| ReportError::Bench(e.to_string()))?;

    let case = BenchCase::new(&args.function, &args.method, Vec2::new(x, y), cfg)
        .map_err(|e| ReportError::Bench(e.to_string()))?;
    let trace = case.run();

    let dir = out_dir(&args.out);
    ensure_dir(&dir)?;
    let stem = format!("{}_{}", args.function, args.method);
    match args.format.as_str() {
        "json" => write_trace_json(&dir.join(format!("{stem}.trace.json")), &trace)?,
        "csv" => write_trace_csv(&dir.join(format!("{stem}.trace.csv")), &trace)?,
        "both" => {
            write_trace_json(&dir.join(format!("{stem}.trace.json")), &trace)?;
            write_trace_csv(&dir.join(format!("{stem}.trace.csv")), &trace)?;
        }
        other => {
            return Err(ReportError::Bench(format!(
                "unknown format {other:?}; expected json, csv, or both"
            )))
        }
    }

    println!("{}", summary_line(&trace));
    Ok(if trace.termination.converged() { 0 } else { 2 })
}

fn expand_functions(selector: &str) -> Result<Vec<String>, ReportError> {
    if selector == "all" {
        return Ok(FUNCTIONS.iter().map(|s| String::from(*s)).collect());
    }
    check_function(selector)?;
    Ok(vec![String::from(selector)])
}

fn expand_methods(selector: &str) -> Result<Vec<Method>, ReportError> {
    if selector == "all" {
        return Ok(Method::MATRIX.to_vec());
    }
    selector.split(',').map(|name| parse_method(name.trim())).collect()
}

fn cmd_matrix(args: &MatrixArgs) -> Result<i32, ReportError> {
    let functions = expand_functions(&args.function)?;
    let methods = expand_methods(&args.methods)?;

    let mut cases = Vec::new();
    for function in &functions {
        let x0 = default_start(function)
            .ok_or_else(|| ReportError::Bench(format!("no standard start for {function:?}")))?;
        for method in &methods {
            let case = BenchCase::with_defaults(function, method.name(), x0)
                .map_err(|e| ReportError::Bench(e.to_string()))?;
            cases.push(case);
        }
    }

    let report = run_matrix(&cases);
    let dir = out_dir(&args.out);
    ensure_dir(&dir)?;
    for (case, trace) in &report.cases {
        let stem = format!("{}_{}", case.function_name(), case.method_name());
        write_trace_json(&dir.join(format!("{stem}.trace.json")), trace)?;
        println!("{}", summary_line(trace));
    }
    write_summary_csv(&dir.join("summary.csv"), &report.summaries())?;
    Ok(0)
}

fn cmd_sweep(args: &SweepArgs) -> Result<i32, ReportError> {
    check_function(&args.function)?;
    let method = parse_method(&args.method)?;
    let f = by_name(&args.function).expect("checked above");

    let rect = match (&args.center, &args.size) {
        (None, None) => default_sweep_rect(&f),
        (center, size) => {
            let (cx, cy) = match center {
                Some(text) => parse_pair(text, "--center")?,
                None => {
                    let c = default_sweep_rect(&f).center();
                    (c.x, c.y)
                }
            };
            let (w, h) = match size {
                Some(text) => parse_pair(text, "--size")?,
                None => (10.0, 10.0),
            };
            if !(w > 0.0 && h > 0.0) {
                return Err(ReportError::Bench(String::from("--size must be positive")));
            }
            Rect::centered(Vec2::new(cx, cy), w, h)
        }
    };

    let sampling = match args.sampling.as_str() {
        "lattice" => Sampling::Lattice,
        "uniform" => Sampling::SeededUniform,
        other => {
            return Err(ReportError::Bench(format!(
                "unknown sampling {other:?}; expected lattice or uniform"
            )))
        }
    };

    let cfg = OptimizerConfig::new(method);
    let sweep = sensitivity_sweep(
        &args.function,
        &args.method,
        rect.center(),
        rect.width(),
        rect.height(),
        args.n,
        sampling,
        args.seed,
        &cfg,
    )
    .map_err(|e| ReportError::Bench(e.to_string()))?;

    let dir = out_dir(&args.out);
    ensure_dir(&dir)?;
    let stem = format!("{}_{}", args.function, args.method);
    let csv_path = dir.join(format!("{stem}.sweep.csv"));
    write_sweep_csv(&csv_path, &sweep)?;
    if args.plot {
        let table = read_sweep_csv(&csv_path)?;
        let svg = sweep_scatter_plot(&table, &format!("{stem} basins"))?;
        write_svg(&dir.join(format!("{stem}.sweep.svg")), &svg)?;
    }

    let converged = sweep.terminations.iter().filter(|t| t.converged()).count();
    let labeled = sweep.basin_labels.iter().filter(|b| b.is_some()).count();
    println!(
        "{} {}: swept {} starts, {} converged, {} in catalogued basins",
        args.function,
        args.method,
        sweep.starts.len(),
        converged,
        labeled,
    );
    Ok(0)
}

fn read_traces(paths: &[PathBuf]) -> Result<Vec<Trace>, ReportError> {
    if paths.is_empty() {
        return Err(ReportError::EmptyPayload(String::from(
            "no trace files given; pass at least one --trace",
        )));
    }
    paths.iter().map(|p| read_trace_json(p)).collect()
}

fn cmd_plot(args: &PlotArgs) -> Result<i32, ReportError> {
    let svg = match args.kind.as_str() {
        "contour" => {
            let traces = read_traces(&args.trace)?;
            let function = traces[0].function_name.clone();
            for t in &traces {
                if t.function_name != function {
                    return Err(ReportError::Bench(format!(
                        "trace files mix functions {function:?} and {:?}",
                        t.function_name
                    )));
                }
            }
            let f = by_name(&function)
                .ok_or_else(|| ReportError::Bench(format!("unknown function {function:?}")))?;
            let grid = ContourGrid::sample(|p| f.value(p), f.plot_domain(), 101, 101);
            let trajectories: Vec<Trajectory> = traces
                .iter()
                .map(|t| Trajectory {
                    label: String::from(t.method.name()),
                    points: t.records.iter().map(|r| r.point).collect(),
                })
                .collect();
            contour_plot(&grid, &trajectories, &function)?
        }
        "errors" => {
            let traces = read_traces(&args.trace)?;
            let measure = match args.series.as_str() {
                "value" => value_error_series,
                "distance" => distance_error_series,
                other => {
                    return Err(ReportError::Bench(format!(
                        "unknown series {other:?}; expected value or distance"
                    )))
                }
            };
            let same_function =
                traces.iter().all(|t| t.function_name == traces[0].function_name);
            let series: Vec<Series> = traces
                .iter()
                .map(|t| Series {
                    label: if same_function {
                        String::from(t.method.name())
                    } else {
                        format!("{} {}", t.function_name, t.method)
                    },
                    values: measure(t),
                })
                .collect();
            let title = if same_function {
                format!("{}: {} error per iteration", traces[0].function_name, args.series)
            } else {
                format!("{} error per iteration", args.series)
            };
            error_series_plot(&series, &title)?
        }
        "scatter" => {
            let path = args.sweep.as_ref().ok_or_else(|| {
                ReportError::EmptyPayload(String::from("scatter needs --sweep FILE"))
            })?;
            let table = read_sweep_csv(path)?;
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| String::from("sweep"));
            sweep_scatter_plot(&table, &stem)?
        }
        other => {
            return Err(ReportError::Bench(format!(
                "unknown plot kind {other:?}; expected contour, errors, or scatter"
            )))
        }
    };
    if let Some(parent) = args.out.parent() {
        if !parent.as_os_str().is_empty() {
            ensure_dir(parent)?;
        }
    }
    write_svg(&args.out, &svg)?;
    println!("wrote {}", args.out.display());
    Ok(0)
}

fn cmd_oracle(args: &OracleArgs) -> Result<i32, ReportError> {
    if args.resolution < 3 {
        return Err(ReportError::Bench(String::from("--resolution must be at least 3")));
    }
    for function in expand_functions(&args.function)? {
        let f = by_name(&function).expect("expanded above");
        let minima = certified_minima(
            |p| f.value(p),
            f.plot_domain(),
            args.resolution,
            args.rounds,
        );
        for (p, v) in minima {
            println!("{function}: minimum at ({:.6}, {:.6}), f = {v:.6e}", p.x, p.y);
        }
    }
    Ok(0)
}

/// Every global minimizer of `f` over `domain`, found without any
/// gradient information.
///
/// A dense `resolution` x `resolution` scan collects interior lattice
/// points lower than their eight neighbors and close in value to the
/// lattice minimum; each candidate is refined by zoom-and-rescan inside
/// its own small window, results closer than `1e-3` are merged, and
/// minima that refine visibly above the best one are dropped. The result
/// is sorted by `x` then `y`.
fn certified_minima<F: Fn(Vec2) -> f64>(
    f: F,
    domain: Rect,
    resolution: usize,
    rounds: usize,
) -> Vec<(Vec2, f64)> {
    let nx = resolution;
    let ny = resolution;
    let dx = domain.width() / (nx - 1) as f64;
    let dy = domain.height() / (ny - 1) as f64;
    let mut values = vec![f64::INFINITY; nx * ny];
    let mut lattice_lo = f64::INFINITY;
    let mut lattice_hi = f64::NEG_INFINITY;
    for j in 0..ny {
        for i in 0..nx {
            let v = f(Vec2::new(domain.x_lo + i as f64 * dx, domain.y_lo + j as f64 * dy));
            values[j * nx + i] = v;
            if v.is_finite() {
                lattice_lo = lattice_lo.min(v);
                lattice_hi = lattice_hi.max(v);
            }
        }
    }
    if !lattice_lo.is_finite() {
        return Vec::new();
    }

    // Candidate wells: strict 8-neighbor lattice minima whose value is
    // within a sliver of the lattice minimum. The sliver keeps every
    // coequal global well (they all sample essentially at the minimum)
    // while discarding strictly higher local wells.
    let keep = lattice_lo + 1e-3 * (lattice_hi - lattice_lo) + 1e-12;
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    for j in 1..ny - 1 {
        for i in 1..nx - 1 {
            let v = values[j * nx + i];
            if !v.is_finite() || v > keep {
                continue;
            }
            let mut lowest = true;
            for (ni, nj) in [
                (i - 1, j - 1),
                (i, j - 1),
                (i + 1, j - 1),
                (i - 1, j),
                (i + 1, j),
                (i - 1, j + 1),
                (i, j + 1),
                (i + 1, j + 1),
            ] {
                if values[nj * nx + ni] < v {
                    lowest = false;
                    break;
                }
            }
            if lowest {
                candidates.push((i, j));
            }
        }
    }

    // Refine each candidate in its own window, then merge duplicates and
    // drop wells that refine above the best.
    let mut refined: Vec<(Vec2, f64)> = Vec::new();
    for (i, j) in candidates {
        let cx = domain.x_lo + i as f64 * dx;
        let cy = domain.y_lo + j as f64 * dy;
        let window = Rect::new(cx - 2.0 * dx, cx + 2.0 * dx, cy - 2.0 * dy, cy + 2.0 * dy)
            .intersect(domain);
        let p = grid_argmin_oracle(&f, window, 101, rounds);
        let v = f(p);
        match refined.iter_mut().find(|(q, _)| q.distance(p) < 1e-3) {
            Some(entry) => {
                if v < entry.1 {
                    *entry = (p, v);
                }
            }
            None => refined.push((p, v)),
        }
    }
    let best = refined.iter().map(|&(_, v)| v).fold(f64::INFINITY, f64::min);
    let mut minima: Vec<(Vec2, f64)> =
        refined.into_iter().filter(|&(_, v)| v <= best + 1e-6 * best.abs().max(1.0)).collect();
    minima.sort_by(|a, b| {
        (a.0.x, a.0.y).partial_cmp(&(b.0.x, b.0.y)).expect("finite coordinates")
    });
    minima
}
