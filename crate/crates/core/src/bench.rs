//! The benchmark protocol: named run matrices, per-iteration error
//! series, initial-point sensitivity sweeps, and the brute-force grid
//! oracles that certify minima independently of any gradient method.
//!
//! Everything here works on registry names ("rosenbrock", "sd", ...) so a
//! run is fully described by plain data — the shape the CLI and the file
//! formats consume.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{Method, OptimizerConfig};
use crate::linalg::{Rect, Vec2};
use crate::objectives::{by_name, ObjectiveFunction};
use crate::optimizers::minimize;
use crate::trace::{Termination, Trace};

/// A sweep final is labeled with the nearest catalogued minimum only when
/// it lies within this distance of it; farther finals get no label. Looser
/// than the gradient tolerance so capped-but-close runs still classify.
pub const BASIN_TOL: f64 = 1e-2;

/// A bench operation was asked for something that does not exist or does
/// not make sense.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BenchError {
    UnknownFunction(String),
    UnknownMethod(String),
    /// The case's method name and its config's method disagree.
    MethodMismatch,
    /// The function has no catalogued minima to label basins with.
    UnknownMinima,
    /// Sweep geometry or count out of range (n >= 1, width/height > 0).
    InvalidSweep,
}

impl fmt::Display for BenchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchError::UnknownFunction(name) => write!(f, "unknown function {name:?}"),
            BenchError::UnknownMethod(name) => write!(f, "unknown method {name:?}"),
            BenchError::MethodMismatch => {
                f.write_str("case method name disagrees with its config")
            }
            BenchError::UnknownMinima => {
                f.write_str("function has no catalogued minima for basin labeling")
            }
            BenchError::InvalidSweep => {
                f.write_str("sweep needs n >= 1 and positive width and height")
            }
        }
    }
}

impl core::error::Error for BenchError {}

/// One benchmark run, described entirely by names and plain data.
///
/// Constructed only through [`BenchCase::new`] (or
/// [`BenchCase::with_defaults`]), which guarantees both names resolve in
/// their registries and the config agrees with the method name.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchCase {
    function_name: String,
    method_name: String,
    x0: Vec2,
    cfg: OptimizerConfig,
}

impl BenchCase {
    pub fn new(
        function_name: &str,
        method_name: &str,
        x0: Vec2,
        cfg: OptimizerConfig,
    ) -> Result<Self, BenchError> {
        if by_name(function_name).is_none() {
            return Err(BenchError::UnknownFunction(String::from(function_name)));
        }
        let method = Method::from_name(method_name)
            .ok_or_else(|| BenchError::UnknownMethod(String::from(method_name)))?;
        if method != cfg.method {
            return Err(BenchError::MethodMismatch);
        }
        Ok(BenchCase {
            function_name: String::from(function_name),
            method_name: String::from(method_name),
            x0,
            cfg,
        })
    }

    /// A case with the method's default configuration.
    pub fn with_defaults(
        function_name: &str,
        method_name: &str,
        x0: Vec2,
    ) -> Result<Self, BenchError> {
        let method = Method::from_name(method_name)
            .ok_or_else(|| BenchError::UnknownMethod(String::from(method_name)))?;
        BenchCase::new(function_name, method_name, x0, OptimizerConfig::new(method))
    }

    pub fn function_name(&self) -> &str {
        &self.function_name
    }

    pub fn method_name(&self) -> &str {
        &self.method_name
    }

    pub fn x0(&self) -> Vec2 {
        self.x0
    }

    pub fn cfg(&self) -> &OptimizerConfig {
        &self.cfg
    }

    /// Execute this case.
    pub fn run(&self) -> Trace {
        let f = by_name(&self.function_name).expect("validated at construction");
        minimize(&f, self.x0, &self.cfg).expect("validated at construction")
    }
}

/// What a finished case boils down to: the numbers the summary tables and
/// plots display. Recomputable from the trace at any time.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseSummary {
    pub function_name: String,
    pub method_name: String,
    pub final_point: Vec2,
    pub final_value: f64,
    pub iterations: usize,
    pub termination: Termination,
    pub n_f: u64,
    pub n_grad: u64,
    pub n_hess: u64,
}

/// The outcome of a run matrix: one trace per case, in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub cases: Vec<(BenchCase, Trace)>,
}

impl BenchReport {
    /// Per-case summaries, recomputed from the traces.
    pub fn summaries(&self) -> Vec<CaseSummary> {
        self.cases
            .iter()
            .map(|(case, trace)| {
                let last = trace.final_record();
                CaseSummary {
                    function_name: String::from(case.function_name()),
                    method_name: String::from(case.method_name()),
                    final_point: last.map(|r| r.point).unwrap_or(case.x0()),
                    final_value: last.map(|r| r.f_value).unwrap_or(f64::NAN),
                    iterations: trace.iterations(),
                    termination: trace.termination,
                    n_f: trace.counters.n_f,
                    n_grad: trace.counters.n_grad,
                    n_hess: trace.counters.n_hess,
                }
            })
            .collect()
    }
}

/// Execute every case independently; the report is ordered as the input.
pub fn run_matrix(cases: &[BenchCase]) -> BenchReport {
    BenchReport {
        cases: cases.iter().map(|case| (case.clone(), case.run())).collect(),
    }
}

/// Per-iteration Euclidean distance to the trace's own final point; the
/// last element is exactly zero.
pub fn distance_error_series(trace: &Trace) -> Vec<f64> {
    match trace.final_record() {
        None => Vec::new(),
        Some(last) => {
            let end = last.point;
            trace.records.iter().map(|r| r.point.distance(end)).collect()
        }
    }
}

/// Per-iteration `|f - f_final|`; the last element is exactly zero. Not
/// monotone in general — pure-step methods fluctuate.
pub fn value_error_series(trace: &Trace) -> Vec<f64> {
    match trace.final_record() {
        None => Vec::new(),
        Some(last) => {
            let end = last.f_value;
            trace.records.iter().map(|r| (r.f_value - end).abs()).collect()
        }
    }
}

/// How a sensitivity sweep places its starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    /// A ceil(sqrt(n)) x ceil(sqrt(n)) grid over the rectangle, truncated
    /// to `n` points in row-major order. Deterministic.
    Lattice,
    /// `n` points drawn uniformly from the rectangle by a seeded
    /// generator. Reproducible by seed.
    SeededUniform,
}

/// The outcome of a sensitivity sweep. All lists have length `n`, indexed
/// by start.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub function_name: String,
    pub method_name: String,
    pub starts: Vec<Vec2>,
    pub finals: Vec<Vec2>,
    pub final_values: Vec<f64>,
    pub iterations: Vec<usize>,
    /// Index into the function's catalogued minima, or `None` when the
    /// final is farther than [`BASIN_TOL`] from all of them.
    pub basin_labels: Vec<Option<usize>>,
    pub terminations: Vec<Termination>,
}

/// Label a final with the nearest catalogued minimum, if close enough.
pub fn assign_basin(final_point: Vec2, minima: &[Vec2]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, m) in minima.iter().enumerate() {
        let d = final_point.distance(*m);
        if best.map_or(true, |(_, bd)| d < bd) {
            best = Some((i, d));
        }
    }
    best.and_then(|(i, d)| if d <= BASIN_TOL { Some(i) } else { None })
}

/// The default start each benchmark function is run from.
pub fn default_start(function_name: &str) -> Option<Vec2> {
    match function_name {
        "rosenbrock" => Some(Vec2::new(-2.0, 2.0)),
        "spring" => Some(Vec2::new(-1.0, 1.0)),
        "ackley" => Some(Vec2::new(-0.1, -0.45)),
        "himmelblau" => Some(Vec2::new(0.0, 6.0)),
        _ => None,
    }
}

/// The default sweep rectangle: 10x10 centered on the function's first
/// catalogued minimum. Himmelblau's is intersected with its plotting
/// window so every start stays inside the figure domain.
pub fn default_sweep_rect(f: &ObjectiveFunction) -> Rect {
    let rect = Rect::centered(f.known_minima()[0], 10.0, 10.0);
    if f.name() == "himmelblau" {
        rect.intersect(f.plot_domain())
    } else {
        rect
    }
}

/// Place sweep starts over a rectangle.
fn sweep_starts(rect: Rect, n: usize, sampling: Sampling, seed: u64) -> Vec<Vec2> {
    match sampling {
        Sampling::Lattice => {
            // ceil(sqrt(n)) without float math.
            let mut side = 1usize;
            while side * side < n {
                side += 1;
            }
            let coord = |lo: f64, hi: f64, i: usize| {
                if side == 1 {
                    0.5 * (lo + hi)
                } else {
                    lo + (hi - lo) * i as f64 / (side - 1) as f64
                }
            };
            let mut pts = Vec::with_capacity(n);
            'rows: for j in 0..side {
                for i in 0..side {
                    if pts.len() == n {
                        break 'rows;
                    }
                    pts.push(Vec2::new(
                        coord(rect.x_lo, rect.x_hi, i),
                        coord(rect.y_lo, rect.y_hi, j),
                    ));
                }
            }
            pts
        }
        Sampling::SeededUniform => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n)
                .map(|_| {
                    let x = rect.x_lo + rng.random::<f64>() * rect.width();
                    let y = rect.y_lo + rng.random::<f64>() * rect.height();
                    Vec2::new(x, y)
                })
                .collect()
        }
    }
}

/// Minimize from `n` starts spread over a `width` x `height` rectangle
/// centered at `center`, labeling each final with the basin it landed in.
#[allow(clippy::too_many_arguments)]
pub fn sensitivity_sweep(
    function_name: &str,
    method_name: &str,
    center: Vec2,
    width: f64,
    height: f64,
    n: usize,
    sampling: Sampling,
    seed: u64,
    cfg: &OptimizerConfig,
) -> Result<SweepResult, BenchError> {
    if n < 1 || !(width > 0.0) || !(height > 0.0) {
        return Err(BenchError::InvalidSweep);
    }
    let f = by_name(function_name)
        .ok_or_else(|| BenchError::UnknownFunction(String::from(function_name)))?;
    let method = Method::from_name(method_name)
        .ok_or_else(|| BenchError::UnknownMethod(String::from(method_name)))?;
    if method != cfg.method {
        return Err(BenchError::MethodMismatch);
    }
    if f.known_minima().is_empty() {
        return Err(BenchError::UnknownMinima);
    }

    let rect = Rect::centered(center, width, height);
    let starts = sweep_starts(rect, n, sampling, seed);
    let mut finals = Vec::with_capacity(n);
    let mut final_values = Vec::with_capacity(n);
    let mut iterations = Vec::with_capacity(n);
    let mut basin_labels = Vec::with_capacity(n);
    let mut terminations = Vec::with_capacity(n);
    for &x0 in &starts {
        let trace = minimize(&f, x0, cfg).expect("config validated above");
        let (fp, fv) = match trace.final_record() {
            Some(r) => (r.point, r.f_value),
            None => (x0, f64::NAN),
        };
        finals.push(fp);
        final_values.push(fv);
        iterations.push(trace.iterations());
        basin_labels.push(assign_basin(fp, f.known_minima()));
        terminations.push(trace.termination);
    }
    Ok(SweepResult {
        function_name: String::from(function_name),
        method_name: String::from(method_name),
        starts,
        finals,
        final_values,
        iterations,
        basin_labels,
        terminations,
    })
}

/// Dense brute-force argmin: scan a `resolution` x `resolution` lattice
/// over `domain`, then zoom 10x around the incumbent `refine_rounds`
/// times and rescan. Returns the best sample ever seen, so the result is
/// no worse than every sample of every round. Value-only on purpose —
/// this is the independent certification that gradient code is tested
/// against.
pub fn grid_argmin_oracle<F: Fn(Vec2) -> f64>(
    f: F,
    domain: Rect,
    resolution: usize,
    refine_rounds: usize,
) -> Vec2 {
    debug_assert!(resolution >= 3);
    let mut window = domain;
    let mut best = window.center();
    let mut best_value = f64::INFINITY;
    for _ in 0..=refine_rounds {
        let (p, v) = scan_argmin(&f, window, resolution);
        if v < best_value {
            best = p;
            best_value = v;
        }
        let half_w = (window.width() / 20.0).max(window.width() / (resolution - 1) as f64);
        let half_h = (window.height() / 20.0).max(window.height() / (resolution - 1) as f64);
        window = Rect::new(best.x - half_w, best.x + half_w, best.y - half_h, best.y + half_h);
    }
    best
}

fn scan_argmin<F: Fn(Vec2) -> f64>(f: &F, window: Rect, resolution: usize) -> (Vec2, f64) {
    let mut best = window.center();
    let mut best_value = f64::INFINITY;
    for j in 0..resolution {
        let y = window.y_lo + window.height() * j as f64 / (resolution - 1) as f64;
        for i in 0..resolution {
            let x = window.x_lo + window.width() * i as f64 / (resolution - 1) as f64;
            let p = Vec2::new(x, y);
            let v = f(p);
            if v < best_value {
                best = p;
                best_value = v;
            }
        }
    }
    (best, best_value)
}

/// Dense brute-force hunt for *all* local minima: seed one candidate per
/// grid sample that beats its eight neighbors (interior samples only),
/// refine each seed with [`grid_argmin_oracle`] zoomed on its own cell,
/// then merge refined points that collapsed together. Results are sorted
/// lexicographically for determinism.
pub fn grid_minima_oracle<F: Fn(Vec2) -> f64>(
    f: F,
    domain: Rect,
    resolution: usize,
    refine_rounds: usize,
) -> Vec<Vec2> {
    debug_assert!(resolution >= 3);
    let nx = resolution;
    let ny = resolution;
    let dx = domain.width() / (nx - 1) as f64;
    let dy = domain.height() / (ny - 1) as f64;
    let mut values = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        let y = domain.y_lo + dy * j as f64;
        for i in 0..nx {
            let x = domain.x_lo + dx * i as f64;
            values.push(f(Vec2::new(x, y)));
        }
    }
    let at = |i: usize, j: usize| values[j * nx + i];

    let mut seeds = Vec::new();
    for j in 1..ny - 1 {
        for i in 1..nx - 1 {
            let v = at(i, j);
            let beats_all = (-1i64..=1)
                .flat_map(|oj| (-1i64..=1).map(move |oi| (oi, oj)))
                .filter(|&(oi, oj)| (oi, oj) != (0, 0))
                .all(|(oi, oj)| {
                    v < at((i as i64 + oi) as usize, (j as i64 + oj) as usize)
                });
            if beats_all {
                seeds.push(Vec2::new(domain.x_lo + dx * i as f64, domain.y_lo + dy * j as f64));
            }
        }
    }

    let mut refined: Vec<Vec2> = seeds
        .iter()
        .map(|&s| {
            let cell = Rect::new(s.x - dx, s.x + dx, s.y - dy, s.y + dy);
            grid_argmin_oracle(&f, cell, resolution, refine_rounds)
        })
        .collect();

    // Merge refinements that converged to the same point (keep the lower
    // value), then order deterministically.
    let merge_tol = dx.max(dy) * 0.5;
    let mut merged: Vec<Vec2> = Vec::new();
    for p in refined.drain(..) {
        match merged.iter_mut().find(|q| q.distance(p) <= merge_tol) {
            Some(q) => {
                if f(p) < f(*q) {
                    *q = p;
                }
            }
            None => merged.push(p),
        }
    }
    merged.sort_by(|a, b| {
        a.x.partial_cmp(&b.x).expect("finite").then(a.y.partial_cmp(&b.y).expect("finite"))
    });
    merged
}
