//! Standalone SVG renderings: contour plots with iteration trajectories,
//! logarithmic convergence-error charts, and sweep scatter plots.
//!
//! Every renderer returns the complete document as a string built from
//! plain `format!` calls — same input, same bytes. Pixel coordinates are
//! written with two decimals, so a marker sits within a hundredth of a
//! pixel of where its data point maps.

use gradbench_core::{Rect, Vec2};

use crate::contour::{chain_segments, geometric_levels, marching_squares, ContourGrid};
use crate::csv::SweepTable;
use crate::error::ReportError;

/// Total document width in pixels.
pub const WIDTH: f64 = 720.0;
/// Total document height in pixels.
pub const HEIGHT: f64 = 540.0;
/// Margins around the plot area: left, right, top, bottom.
pub const MARGINS: (f64, f64, f64, f64) = (64.0, 20.0, 36.0, 48.0);

/// Line colors, assigned to datasets in order and reused cyclically.
pub const PALETTE: [&str; 7] =
    ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"];

/// Fill for scatter points that belong to no catalogued basin.
pub const UNASSIGNED_COLOR: &str = "#888888";

/// How many iso-levels a contour plot draws.
pub const CONTOUR_LEVELS: usize = 12;

/// An iteration path to overlay on a contour plot.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub label: String,
    pub points: Vec<Vec2>,
}

/// One labeled value-per-iteration curve for the error chart.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub values: Vec<f64>,
}

/// The affine map from a data window to the plot area, y flipped so that
/// larger data values sit higher on the page.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl Frame {
    pub fn from_rect(r: Rect) -> Frame {
        Frame { x_lo: r.x_lo, x_hi: r.x_hi, y_lo: r.y_lo, y_hi: r.y_hi }
    }

    /// Horizontal pixel coordinate of data abscissa `x`.
    pub fn px(&self, x: f64) -> f64 {
        let (ml, mr, _, _) = MARGINS;
        ml + (x - self.x_lo) / (self.x_hi - self.x_lo) * (WIDTH - ml - mr)
    }

    /// Vertical pixel coordinate of data ordinate `y`.
    pub fn py(&self, y: f64) -> f64 {
        let (_, _, mt, mb) = MARGINS;
        mt + (self.y_hi - y) / (self.y_hi - self.y_lo) * (HEIGHT - mt - mb)
    }
}

fn xml_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

// Tick labels: plain decimal for moderate magnitudes, scientific for the
// rest, trailing zeros trimmed.
fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return String::from("0");
    }
    let magnitude = v.abs();
    if !(1e-3..1e5).contains(&magnitude) {
        return format!("{v:.1e}");
    }
    let mut s = format!("{v:.3}");
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.pop();
    }
    s
}

fn document_open(title: &str) -> String {
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\" font-size=\"12\">\n",
            "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"#ffffff\"/>\n",
            "<text x=\"{tx:.2}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{title}</text>\n"
        ),
        w = WIDTH,
        h = HEIGHT,
        tx = WIDTH / 2.0,
        title = xml_escape(title),
    )
}

// The plot border plus, per axis, five evenly spaced labeled ticks.
fn axes(frame: &Frame, x_label: &str, y_label: &str) -> String {
    let (ml, mr, mt, mb) = MARGINS;
    let (right, bottom) = (WIDTH - mr, HEIGHT - mb);
    let mut out = format!(
        concat!(
            "<g class=\"axes\" stroke=\"#333333\" fill=\"none\">\n",
            "<rect x=\"{ml:.2}\" y=\"{mt:.2}\" width=\"{pw:.2}\" height=\"{ph:.2}\"/>\n"
        ),
        ml = ml,
        mt = mt,
        pw = right - ml,
        ph = bottom - mt,
    );
    for i in 0..=4 {
        let fx = frame.x_lo + (frame.x_hi - frame.x_lo) * i as f64 / 4.0;
        let px = frame.px(fx);
        out.push_str(&format!(
            "<line x1=\"{px:.2}\" y1=\"{bottom:.2}\" x2=\"{px:.2}\" y2=\"{t:.2}\"/>\n",
            t = bottom + 5.0,
        ));
        out.push_str(&format!(
            concat!(
                "<text x=\"{px:.2}\" y=\"{ty:.2}\" text-anchor=\"middle\" ",
                "fill=\"#333333\" stroke=\"none\">{label}</text>\n"
            ),
            px = px,
            ty = bottom + 18.0,
            label = fmt_tick(fx),
        ));

        let fy = frame.y_lo + (frame.y_hi - frame.y_lo) * i as f64 / 4.0;
        let py = frame.py(fy);
        out.push_str(&format!(
            "<line x1=\"{l:.2}\" y1=\"{py:.2}\" x2=\"{ml:.2}\" y2=\"{py:.2}\"/>\n",
            l = ml - 5.0,
        ));
        out.push_str(&format!(
            concat!(
                "<text x=\"{tx:.2}\" y=\"{ty:.2}\" text-anchor=\"end\" ",
                "fill=\"#333333\" stroke=\"none\">{label}</text>\n"
            ),
            tx = ml - 8.0,
            ty = py + 4.0,
            label = fmt_tick(fy),
        ));
    }
    out.push_str(&format!(
        concat!(
            "<text x=\"{cx:.2}\" y=\"{cy:.2}\" text-anchor=\"middle\" ",
            "fill=\"#333333\" stroke=\"none\">{label}</text>\n"
        ),
        cx = (ml + right) / 2.0,
        cy = bottom + 36.0,
        label = xml_escape(x_label),
    ));
    out.push_str(&format!(
        concat!(
            "<text x=\"16\" y=\"{cy:.2}\" text-anchor=\"middle\" fill=\"#333333\" ",
            "stroke=\"none\" transform=\"rotate(-90 16 {cy:.2})\">{label}</text>\n"
        ),
        cy = (mt + bottom) / 2.0,
        label = xml_escape(y_label),
    ));
    out.push_str("</g>\n");
    out
}

fn legend(labels: &[String]) -> String {
    let (_, mr, mt, _) = MARGINS;
    let mut out = String::from("<g class=\"legend\" font-size=\"12\">\n");
    for (i, label) in labels.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = mt + 16.0 + 16.0 * i as f64;
        out.push_str(&format!(
            "<line x1=\"{x1:.2}\" y1=\"{ly:.2}\" x2=\"{x2:.2}\" y2=\"{ly:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            x1 = WIDTH - mr - 150.0,
            x2 = WIDTH - mr - 126.0,
            ly = y - 4.0,
        ));
        out.push_str(&format!(
            "<text x=\"{tx:.2}\" y=\"{ty:.2}\" fill=\"#333333\">{label}</text>\n",
            tx = WIDTH - mr - 120.0,
            ty = y,
            label = xml_escape(label),
        ));
    }
    out.push_str("</g>\n");
    out
}

fn polyline(points: &[(f64, f64)], color: &str, width: f64) -> String {
    let mut coords = String::new();
    for (i, (x, y)) in points.iter().enumerate() {
        if i > 0 {
            coords.push(' ');
        }
        coords.push_str(&format!("{x:.2},{y:.2}"));
    }
    format!(
        "<polyline points=\"{coords}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{width}\"/>\n"
    )
}

/// Render iso-lines of `grid` with iteration paths drawn on top.
///
/// Each trajectory is stroked in a palette color with a hollow marker
/// (`class="start"`) on its first point and a filled one (`class="end"`)
/// on its last. Trajectories outside the grid window are clipped to it by
/// the SVG itself being clipped per group. A trajectory with no points is
/// refused: an empty overlay almost certainly means the wrong file was
/// loaded.
pub fn contour_plot(
    grid: &ContourGrid,
    trajectories: &[Trajectory],
    title: &str,
) -> Result<String, ReportError> {
    for t in trajectories {
        if t.points.is_empty() {
            return Err(ReportError::EmptyPayload(format!("trajectory {:?} has no points", t.label)));
        }
    }
    let frame = Frame::from_rect(grid.domain);
    let mut out = document_open(title);
    out.push_str(&axes(&frame, "x", "y"));

    out.push_str("<g class=\"contours\">\n");
    for level in geometric_levels(grid, CONTOUR_LEVELS) {
        for chain in chain_segments(&marching_squares(grid, level)) {
            let pts: Vec<(f64, f64)> =
                chain.iter().map(|p| (frame.px(p.x), frame.py(p.y))).collect();
            out.push_str(&polyline(&pts, "#b8b8b8", 1.0));
        }
    }
    out.push_str("</g>\n");

    out.push_str("<g class=\"trajectories\">\n");
    for (i, t) in trajectories.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<(f64, f64)> = t.points.iter().map(|p| (frame.px(p.x), frame.py(p.y))).collect();
        out.push_str(&polyline(&pts, color, 1.5));
        let (sx, sy) = pts[0];
        let &(ex, ey) = pts.last().expect("checked non-empty");
        out.push_str(&format!(
            "<circle class=\"start\" cx=\"{sx:.2}\" cy=\"{sy:.2}\" r=\"4\" fill=\"#ffffff\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n"
        ));
        out.push_str(&format!(
            "<circle class=\"end\" cx=\"{ex:.2}\" cy=\"{ey:.2}\" r=\"3\" fill=\"{color}\"/>\n"
        ));
    }
    out.push_str("</g>\n");

    let labels: Vec<String> = trajectories.iter().map(|t| t.label.clone()).collect();
    if !labels.is_empty() {
        out.push_str(&legend(&labels));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Render labeled per-iteration error curves on a logarithmic vertical
/// axis.
///
/// Iteration counts run along the horizontal axis. Values that are zero
/// or negative cannot sit on a log axis, so they are drawn at the
/// smallest positive value any curve attains — visually "the floor" —
/// which keeps final exactly-zero errors visible instead of dropping
/// them. If no value is positive the floor falls back to `1e-16`.
pub fn error_series_plot(series: &[Series], title: &str) -> Result<String, ReportError> {
    if series.is_empty() || series.iter().all(|s| s.values.is_empty()) {
        return Err(ReportError::EmptyPayload(String::from("no error series to draw")));
    }
    if let Some(empty) = series.iter().find(|s| s.values.is_empty()) {
        return Err(ReportError::EmptyPayload(format!("series {:?} has no values", empty.label)));
    }

    let mut floor = f64::INFINITY;
    let mut ceil = f64::NEG_INFINITY;
    let mut longest = 0usize;
    for s in series {
        longest = longest.max(s.values.len());
        for &v in &s.values {
            if v > 0.0 && v.is_finite() {
                floor = floor.min(v);
                ceil = ceil.max(v);
            }
        }
    }
    if !floor.is_finite() {
        floor = 1e-16;
        ceil = 1e-16;
    }

    let lo_decade = floor.log10().floor();
    let hi_decade = (ceil.log10().ceil()).max(lo_decade + 1.0);
    let frame = Frame {
        x_lo: 0.0,
        x_hi: (longest - 1).max(1) as f64,
        y_lo: lo_decade,
        y_hi: hi_decade,
    };

    let mut out = document_open(title);
    // Log-scale vertical axis: ticks at powers of ten, thinned to at most
    // eight labels.
    let (ml, mr, mt, mb) = MARGINS;
    let (right, bottom) = (WIDTH - mr, HEIGHT - mb);
    let mut axis = format!(
        concat!(
            "<g class=\"axes\" stroke=\"#333333\" fill=\"none\">\n",
            "<rect x=\"{ml:.2}\" y=\"{mt:.2}\" width=\"{pw:.2}\" height=\"{ph:.2}\"/>\n"
        ),
        ml = ml,
        mt = mt,
        pw = right - ml,
        ph = bottom - mt,
    );
    for i in 0..=4 {
        let fx = frame.x_lo + (frame.x_hi - frame.x_lo) * i as f64 / 4.0;
        let px = frame.px(fx);
        axis.push_str(&format!(
            "<line x1=\"{px:.2}\" y1=\"{bottom:.2}\" x2=\"{px:.2}\" y2=\"{t:.2}\"/>\n",
            t = bottom + 5.0,
        ));
        axis.push_str(&format!(
            concat!(
                "<text x=\"{px:.2}\" y=\"{ty:.2}\" text-anchor=\"middle\" ",
                "fill=\"#333333\" stroke=\"none\">{label}</text>\n"
            ),
            px = px,
            ty = bottom + 18.0,
            label = fmt_tick(fx.round()),
        ));
    }
    let decades = (hi_decade - lo_decade) as i64;
    let step = (decades as f64 / 8.0).ceil().max(1.0) as i64;
    let mut d = lo_decade as i64;
    while d <= lo_decade as i64 + decades {
        let py = frame.py(d as f64);
        axis.push_str(&format!(
            "<line x1=\"{l:.2}\" y1=\"{py:.2}\" x2=\"{ml:.2}\" y2=\"{py:.2}\"/>\n",
            l = ml - 5.0,
        ));
        axis.push_str(&format!(
            concat!(
                "<text x=\"{tx:.2}\" y=\"{ty:.2}\" text-anchor=\"end\" ",
                "fill=\"#333333\" stroke=\"none\">1e{d}</text>\n"
            ),
            tx = ml - 8.0,
            ty = py + 4.0,
            d = d,
        ));
        d += step;
    }
    axis.push_str(&format!(
        concat!(
            "<text x=\"{cx:.2}\" y=\"{cy:.2}\" text-anchor=\"middle\" ",
            "fill=\"#333333\" stroke=\"none\">iteration</text>\n"
        ),
        cx = (ml + right) / 2.0,
        cy = bottom + 36.0,
    ));
    axis.push_str(&format!(
        concat!(
            "<text x=\"16\" y=\"{cy:.2}\" text-anchor=\"middle\" fill=\"#333333\" ",
            "stroke=\"none\" transform=\"rotate(-90 16 {cy:.2})\">error</text>\n"
        ),
        cy = (mt + bottom) / 2.0,
    ));
    axis.push_str("</g>\n");
    out.push_str(&axis);

    out.push_str("<g class=\"series\">\n");
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<(f64, f64)> = s
            .values
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let clamped = if v > 0.0 && v.is_finite() { v } else { floor };
                (frame.px(k as f64), frame.py(clamped.log10()))
            })
            .collect();
        out.push_str(&polyline(&pts, color, 1.5));
    }
    out.push_str("</g>\n");

    let labels: Vec<String> = series.iter().map(|s| s.label.clone()).collect();
    out.push_str(&legend(&labels));
    out.push_str("</svg>\n");
    Ok(out)
}

/// Render sweep starts as a scatter, one dot per start, colored by the
/// basin its run finished in; starts whose finals match no catalogued
/// basin are gray.
pub fn sweep_scatter_plot(table: &SweepTable, title: &str) -> Result<String, ReportError> {
    if table.is_empty() {
        return Err(ReportError::EmptyPayload(String::from("sweep has no rows")));
    }
    let mut x_lo = f64::INFINITY;
    let mut x_hi = f64::NEG_INFINITY;
    let mut y_lo = f64::INFINITY;
    let mut y_hi = f64::NEG_INFINITY;
    for p in &table.starts {
        x_lo = x_lo.min(p.x);
        x_hi = x_hi.max(p.x);
        y_lo = y_lo.min(p.y);
        y_hi = y_hi.max(p.y);
    }
    // Pad the window so boundary dots are not clipped; degenerate spans
    // (a single start, or a collinear lattice row) get a unit window.
    let pad_x = if x_hi > x_lo { 0.05 * (x_hi - x_lo) } else { 0.5 };
    let pad_y = if y_hi > y_lo { 0.05 * (y_hi - y_lo) } else { 0.5 };
    let frame =
        Frame { x_lo: x_lo - pad_x, x_hi: x_hi + pad_x, y_lo: y_lo - pad_y, y_hi: y_hi + pad_y };

    let mut out = document_open(title);
    out.push_str(&axes(&frame, "x0", "y0"));
    out.push_str("<g class=\"points\">\n");
    for (i, p) in table.starts.iter().enumerate() {
        let color = match table.basin_labels[i] {
            Some(b) => PALETTE[b % PALETTE.len()],
            None => UNASSIGNED_COLOR,
        };
        out.push_str(&format!(
            "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"3\" fill=\"{color}\"/>\n",
            cx = frame.px(p.x),
            cy = frame.py(p.y),
        ));
    }
    out.push_str("</g>\n");

    let mut seen: Vec<usize> = Vec::new();
    for label in table.basin_labels.iter().flatten() {
        if !seen.contains(label) {
            seen.push(*label);
        }
    }
    seen.sort_unstable();
    let mut legend_text = String::from("<g class=\"legend\" font-size=\"12\">\n");
    let (_, mr, mt, _) = MARGINS;
    let mut row = 0usize;
    for b in &seen {
        let y = mt + 16.0 + 16.0 * row as f64;
        legend_text.push_str(&format!(
            "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"3\" fill=\"{color}\"/>\n",
            cx = WIDTH - mr - 140.0,
            cy = y - 4.0,
            color = PALETTE[b % PALETTE.len()],
        ));
        legend_text.push_str(&format!(
            "<text x=\"{tx:.2}\" y=\"{ty:.2}\" fill=\"#333333\">basin {b}</text>\n",
            tx = WIDTH - mr - 130.0,
            ty = y,
        ));
        row += 1;
    }
    if table.basin_labels.iter().any(|b| b.is_none()) {
        let y = mt + 16.0 + 16.0 * row as f64;
        legend_text.push_str(&format!(
            "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"3\" fill=\"{color}\"/>\n",
            cx = WIDTH - mr - 140.0,
            cy = y - 4.0,
            color = UNASSIGNED_COLOR,
        ));
        legend_text.push_str(&format!(
            "<text x=\"{tx:.2}\" y=\"{ty:.2}\" fill=\"#333333\">unassigned</text>\n",
            tx = WIDTH - mr - 130.0,
            ty = y,
        ));
    }
    legend_text.push_str("</g>\n");
    out.push_str(&legend_text);
    out.push_str("</svg>\n");
    Ok(out)
}

/// Write a rendered document to `path`.
pub fn write_svg(path: &std::path::Path, text: &str) -> Result<(), ReportError> {
    std::fs::write(path, text).map_err(|e| ReportError::io(path, e))
}
