//! Lossless JSON persistence for iteration traces.
//!
//! A trace file is a single JSON object tagged with [`TRACE_SCHEMA`].
//! Floats are written with serde_json's shortest round-trip formatting, so
//! reading a file back reproduces every number bit for bit. Writing
//! validates the trace first and reading re-validates, so a file on disk
//! always describes a structurally sound run.

use std::fs;
use std::path::Path;

use gradbench_core::trace::{EvalCounters, IterationRecord, Termination, Trace};
use gradbench_core::{Method, Vec2};
use serde::{Deserialize, Serialize};

use crate::error::ReportError;

/// Schema tag every trace file carries; readers reject anything else.
pub const TRACE_SCHEMA: &str = "gradbench-trace/1";

#[derive(Serialize, Deserialize)]
struct TraceDoc {
    schema: String,
    function: String,
    method: String,
    x0: [f64; 2],
    termination: String,
    counters: CountersDoc,
    records: Vec<RecordDoc>,
}

#[derive(Serialize, Deserialize)]
struct CountersDoc {
    n_f: u64,
    n_grad: u64,
    n_hess: u64,
}

#[derive(Serialize, Deserialize)]
struct RecordDoc {
    k: usize,
    point: [f64; 2],
    f: f64,
    grad: [f64; 2],
    grad_norm: f64,
    direction: [f64; 2],
    alpha: f64,
}

fn pair(v: Vec2) -> [f64; 2] {
    [v.x, v.y]
}

fn vec2(p: [f64; 2]) -> Vec2 {
    Vec2::new(p[0], p[1])
}

/// Serialize a trace to the schema-tagged JSON document.
///
/// The trace is validated first: a structurally broken trace (or one
/// smuggling non-finite numbers through the public fields) is refused
/// rather than written, because non-finite floats have no JSON
/// representation and would not round-trip.
pub fn trace_to_json(trace: &Trace) -> Result<String, ReportError> {
    trace.validate().map_err(|e| ReportError::InvalidTrace(e.to_string()))?;
    if !trace.x0.is_finite() {
        return Err(ReportError::InvalidTrace(String::from("x0 is not finite")));
    }
    let doc = TraceDoc {
        schema: String::from(TRACE_SCHEMA),
        function: trace.function_name.clone(),
        method: String::from(trace.method.name()),
        x0: pair(trace.x0),
        termination: String::from(trace.termination.name()),
        counters: CountersDoc {
            n_f: trace.counters.n_f,
            n_grad: trace.counters.n_grad,
            n_hess: trace.counters.n_hess,
        },
        records: trace
            .records
            .iter()
            .map(|r| RecordDoc {
                k: r.k,
                point: pair(r.point),
                f: r.f_value,
                grad: pair(r.grad),
                grad_norm: r.grad_norm,
                direction: pair(r.direction),
                alpha: r.alpha,
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(text)
}

/// Parse a schema-tagged JSON document back into a validated trace.
pub fn trace_from_json(text: &str) -> Result<Trace, ReportError> {
    let doc: TraceDoc = serde_json::from_str(text)?;
    if doc.schema != TRACE_SCHEMA {
        return Err(ReportError::SchemaMismatch {
            expected: String::from(TRACE_SCHEMA),
            found: doc.schema,
        });
    }
    let method = Method::from_name(&doc.method)
        .ok_or_else(|| ReportError::InvalidTrace(format!("unknown method {:?}", doc.method)))?;
    let termination = Termination::from_name(&doc.termination).ok_or_else(|| {
        ReportError::InvalidTrace(format!("unknown termination {:?}", doc.termination))
    })?;
    let mut records = Vec::with_capacity(doc.records.len());
    for r in &doc.records {
        let rec = IterationRecord::from_parts(
            r.k,
            vec2(r.point),
            r.f,
            vec2(r.grad),
            r.grad_norm,
            vec2(r.direction),
            r.alpha,
        )
        .map_err(|e| ReportError::InvalidTrace(format!("record {}: {e}", r.k)))?;
        records.push(rec);
    }
    let trace = Trace {
        function_name: doc.function,
        method,
        x0: vec2(doc.x0),
        records,
        termination,
        counters: EvalCounters {
            n_f: doc.counters.n_f,
            n_grad: doc.counters.n_grad,
            n_hess: doc.counters.n_hess,
        },
    };
    trace.validate().map_err(|e| ReportError::InvalidTrace(e.to_string()))?;
    Ok(trace)
}

/// Write a trace to `path` as JSON.
pub fn write_trace_json(path: &Path, trace: &Trace) -> Result<(), ReportError> {
    let text = trace_to_json(trace)?;
    fs::write(path, text).map_err(|e| ReportError::io(path, e))
}

/// Read a trace from the JSON file at `path`.
pub fn read_trace_json(path: &Path) -> Result<Trace, ReportError> {
    let text = fs::read_to_string(path).map_err(|e| ReportError::io(path, e))?;
    trace_from_json(&text)
}
