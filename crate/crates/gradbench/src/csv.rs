//! CSV tables for traces, sweeps, and benchmark summaries.
//!
//! All tables share the same dialect: a header row, comma separators, LF
//! line endings, UTF-8, and `.` as the decimal separator. Floats are
//! printed with Rust's shortest round-trip formatting, so a written sweep
//! parses back to exactly the numbers it came from.

use std::fs;
use std::path::Path;

use gradbench_core::bench::{CaseSummary, SweepResult};
use gradbench_core::trace::Trace;
use gradbench_core::Vec2;

use crate::error::ReportError;

/// Header of the per-iteration table written for a single run.
pub const TRACE_HEADER: &str = "k,x,y,f,grad_norm,alpha";

/// Header of the one-row-per-start table written for a sensitivity sweep.
pub const SWEEP_HEADER: &str = "x0,y0,xf,yf,ff,iters,basin";

/// Header of the one-row-per-case table written for a benchmark matrix.
pub const SUMMARY_HEADER: &str = "function,method,xf,yf,ff,iterations,termination,n_f,n_grad,n_hess";

/// Render a trace as a `k,x,y,f,grad_norm,alpha` table, one row per
/// iteration record.
pub fn trace_to_csv(trace: &Trace) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for r in &trace.records {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.k, r.point.x, r.point.y, r.f_value, r.grad_norm, r.alpha
        ));
    }
    out
}

/// Render a sweep as a `x0,y0,xf,yf,ff,iters,basin` table, one row per
/// start. Finals outside every catalogued basin carry the label `-1`.
pub fn sweep_to_csv(sweep: &SweepResult) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for i in 0..sweep.starts.len() {
        let basin = match sweep.basin_labels[i] {
            Some(b) => b as i64,
            None => -1,
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            sweep.starts[i].x,
            sweep.starts[i].y,
            sweep.finals[i].x,
            sweep.finals[i].y,
            sweep.final_values[i],
            sweep.iterations[i],
            basin
        ));
    }
    out
}

/// Render benchmark case summaries as a table, one row per case.
pub fn summaries_to_csv(summaries: &[CaseSummary]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for s in summaries {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            s.function_name,
            s.method_name,
            s.final_point.x,
            s.final_point.y,
            s.final_value,
            s.iterations,
            s.termination.name(),
            s.n_f,
            s.n_grad,
            s.n_hess
        ));
    }
    out
}

/// The rows of a sweep table read back from disk, column-major like
/// [`SweepResult`] but without the run metadata a CSV does not carry.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub starts: Vec<Vec2>,
    pub finals: Vec<Vec2>,
    pub final_values: Vec<f64>,
    pub iterations: Vec<usize>,
    pub basin_labels: Vec<Option<usize>>,
}

impl SweepTable {
    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }
}

/// Parse the text of a sweep table. Line numbers in errors are 1-based
/// and count the header.
pub fn sweep_from_csv(text: &str) -> Result<SweepTable, ReportError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(ReportError::Csv {
        line: 1,
        reason: String::from("empty file, expected a header row"),
    })?;
    if header.trim_end() != SWEEP_HEADER {
        return Err(ReportError::Csv {
            line: 1,
            reason: format!("expected header {SWEEP_HEADER:?}, found {header:?}"),
        });
    }
    let mut table = SweepTable {
        starts: Vec::new(),
        finals: Vec::new(),
        final_values: Vec::new(),
        iterations: Vec::new(),
        basin_labels: Vec::new(),
    };
    for (idx, row) in lines {
        let line = idx + 1;
        if row.is_empty() {
            continue;
        }
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != 7 {
            return Err(ReportError::Csv {
                line,
                reason: format!("expected 7 fields, found {}", fields.len()),
            });
        }
        let float = |pos: usize, name: &str| -> Result<f64, ReportError> {
            fields[pos].parse::<f64>().map_err(|_| ReportError::Csv {
                line,
                reason: format!("{name} is not a number: {:?}", fields[pos]),
            })
        };
        let x0 = float(0, "x0")?;
        let y0 = float(1, "y0")?;
        let xf = float(2, "xf")?;
        let yf = float(3, "yf")?;
        let ff = float(4, "ff")?;
        let iters = fields[5].parse::<usize>().map_err(|_| ReportError::Csv {
            line,
            reason: format!("iters is not a count: {:?}", fields[5]),
        })?;
        let basin = fields[6].parse::<i64>().map_err(|_| ReportError::Csv {
            line,
            reason: format!("basin is not an integer: {:?}", fields[6]),
        })?;
        let basin = match basin {
            -1 => None,
            b if b >= 0 => Some(b as usize),
            b => {
                return Err(ReportError::Csv {
                    line,
                    reason: format!("basin label {b} is neither an index nor -1"),
                })
            }
        };
        table.starts.push(Vec2::new(x0, y0));
        table.finals.push(Vec2::new(xf, yf));
        table.final_values.push(ff);
        table.iterations.push(iters);
        table.basin_labels.push(basin);
    }
    Ok(table)
}

/// Write a trace table to `path`.
pub fn write_trace_csv(path: &Path, trace: &Trace) -> Result<(), ReportError> {
    fs::write(path, trace_to_csv(trace)).map_err(|e| ReportError::io(path, e))
}

/// Write a sweep table to `path`.
pub fn write_sweep_csv(path: &Path, sweep: &SweepResult) -> Result<(), ReportError> {
    fs::write(path, sweep_to_csv(sweep)).map_err(|e| ReportError::io(path, e))
}

/// Read a sweep table from `path`.
pub fn read_sweep_csv(path: &Path) -> Result<SweepTable, ReportError> {
    let text = fs::read_to_string(path).map_err(|e| ReportError::io(path, e))?;
    sweep_from_csv(&text)
}

/// Write a benchmark summary table to `path`.
pub fn write_summary_csv(path: &Path, summaries: &[CaseSummary]) -> Result<(), ReportError> {
    fs::write(path, summaries_to_csv(summaries)).map_err(|e| ReportError::io(path, e))
}
