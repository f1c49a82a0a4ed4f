//! Std companion to `gradbench-core`: file formats (JSON traces, CSV
//! tables), marching-squares contour extraction, SVG plotting, and the
//! command-line benchmark runner.

pub mod cli;
pub mod contour;
pub mod csv;
pub mod error;
pub mod json;
pub mod svg;

pub use error::ReportError;
