//! Sampled scalar fields and marching-squares iso-line extraction.
//!
//! A [`ContourGrid`] samples a function on an inclusive lattice over a
//! rectangle. [`marching_squares`] walks the lattice cell by cell and
//! emits line segments approximating one iso-level; [`chain_segments`]
//! stitches those segments into polylines. Crossing points on an edge
//! shared by two cells are computed from the same operands in the same
//! order, so they match bit for bit and chains close exactly.

use gradbench_core::{Rect, Vec2};

/// A function sampled on an `nx` by `ny` inclusive lattice over `domain`:
/// `values[j * nx + i]` holds the sample at
/// `(x_lo + i * dx, y_lo + j * dy)` where `dx = width / (nx - 1)`, so both
/// boundary rows and columns are sampled.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourGrid {
    pub domain: Rect,
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
}

impl ContourGrid {
    /// Sample `f` over `domain`. Both lattice dimensions must be at
    /// least 2, so every cell has four distinct corners.
    pub fn sample<F: Fn(Vec2) -> f64>(f: F, domain: Rect, nx: usize, ny: usize) -> ContourGrid {
        assert!(nx >= 2 && ny >= 2, "a contour grid needs at least 2 samples per axis");
        let mut values = Vec::with_capacity(nx * ny);
        let grid = ContourGrid { domain, nx, ny, values: Vec::new() };
        for j in 0..ny {
            for i in 0..nx {
                values.push(f(Vec2::new(grid.x_of(i), grid.y_of(j))));
            }
        }
        ContourGrid { values, ..grid }
    }

    /// The `i`-th lattice abscissa.
    pub fn x_of(&self, i: usize) -> f64 {
        self.domain.x_lo + i as f64 * (self.domain.width() / (self.nx - 1) as f64)
    }

    /// The `j`-th lattice ordinate.
    pub fn y_of(&self, j: usize) -> f64 {
        self.domain.y_lo + j as f64 * (self.domain.height() / (self.ny - 1) as f64)
    }

    /// The sample at lattice point `(i, j)`.
    pub fn value_at(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx + i]
    }

    /// Smallest and largest finite sample, or `None` if no sample is
    /// finite.
    pub fn finite_range(&self) -> Option<(f64, f64)> {
        let mut range: Option<(f64, f64)> = None;
        for &v in &self.values {
            if v.is_finite() {
                range = Some(match range {
                    None => (v, v),
                    Some((lo, hi)) => (lo.min(v), hi.max(v)),
                });
            }
        }
        range
    }
}

/// Iso-levels for a sampled field: `count` levels placed geometrically
/// above the grid minimum, spanning close to three decades of the sampled
/// range. Level `i` sits at `min + range * 10^(-3 + 3 i / count)`, which
/// keeps every level strictly between the sampled extremes — dense near
/// the minimum where the interesting structure is, sparse near the top.
/// A flat (or non-finite) field has no levels.
pub fn geometric_levels(grid: &ContourGrid, count: usize) -> Vec<f64> {
    let (lo, hi) = match grid.finite_range() {
        Some(r) => r,
        None => return Vec::new(),
    };
    let range = hi - lo;
    if !(range > 0.0) {
        return Vec::new();
    }
    (0..count)
        .map(|i| lo + range * 10f64.powf(-3.0 + 3.0 * i as f64 / count as f64))
        .collect()
}

/// One straight piece of an iso-line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Vec2,
    pub b: Vec2,
}

// Edge crossing points, each interpolated in a fixed orientation
// (horizontal edges left to right, vertical edges bottom to top) so the
// two cells sharing an edge compute the identical point. A crossing that
// lands on a lattice corner snaps to the corner's own coordinates, which
// every incident cell computes identically.
fn interp(a: f64, b: f64, level: f64, va: f64, vb: f64) -> f64 {
    let t = (level - va) / (vb - va);
    if t <= 0.0 {
        a
    } else if t >= 1.0 {
        b
    } else {
        a + t * (b - a)
    }
}

/// The iso-line segments of one lattice cell, `(i, j)` being its
/// bottom-left corner. Emits nothing when `level` lies outside the range
/// of the cell's corner samples, or when any corner is non-finite.
/// Crossings that collapse onto a single corner (the level passing
/// exactly through a lattice point) would yield zero-length segments;
/// those are dropped.
pub fn cell_segments(grid: &ContourGrid, level: f64, i: usize, j: usize) -> Vec<Segment> {
    let v00 = grid.value_at(i, j);
    let v10 = grid.value_at(i + 1, j);
    let v01 = grid.value_at(i, j + 1);
    let v11 = grid.value_at(i + 1, j + 1);
    if !(v00.is_finite() && v10.is_finite() && v01.is_finite() && v11.is_finite()) {
        return Vec::new();
    }

    let x0 = grid.x_of(i);
    let x1 = grid.x_of(i + 1);
    let y0 = grid.y_of(j);
    let y1 = grid.y_of(j + 1);

    let bottom = || Vec2::new(interp(x0, x1, level, v00, v10), y0);
    let top = || Vec2::new(interp(x0, x1, level, v01, v11), y1);
    let left = || Vec2::new(x0, interp(y0, y1, level, v00, v01));
    let right = || Vec2::new(x1, interp(y0, y1, level, v10, v11));

    // Corners strictly below the level, packed into the standard case
    // index: bit 0 = bottom-left, 1 = bottom-right, 2 = top-right,
    // 3 = top-left.
    let case = usize::from(v00 < level)
        | usize::from(v10 < level) << 1
        | usize::from(v11 < level) << 2
        | usize::from(v01 < level) << 3;

    let seg = |a: Vec2, b: Vec2| Segment { a, b };
    let mut segments = match case {
        0 | 15 => Vec::new(),
        1 | 14 => vec![seg(left(), bottom())],
        2 | 13 => vec![seg(bottom(), right())],
        3 | 12 => vec![seg(left(), right())],
        4 | 11 => vec![seg(right(), top())],
        6 | 9 => vec![seg(bottom(), top())],
        7 | 8 => vec![seg(left(), top())],
        // The two diagonal cases are ambiguous; the cell-center average
        // decides which pair of corners the iso-line separates.
        5 => {
            if (v00 + v10 + v01 + v11) / 4.0 < level {
                vec![seg(left(), top()), seg(bottom(), right())]
            } else {
                vec![seg(left(), bottom()), seg(right(), top())]
            }
        }
        10 => {
            if (v00 + v10 + v01 + v11) / 4.0 < level {
                vec![seg(left(), bottom()), seg(right(), top())]
            } else {
                vec![seg(left(), top()), seg(bottom(), right())]
            }
        }
        _ => unreachable!("4-bit case index"),
    };
    segments.retain(|s| s.a != s.b);
    segments
}

/// All iso-line segments of `level` over the grid.
pub fn marching_squares(grid: &ContourGrid, level: f64) -> Vec<Segment> {
    let mut segments = Vec::new();
    for j in 0..grid.ny - 1 {
        for i in 0..grid.nx - 1 {
            segments.extend(cell_segments(grid, level, i, j));
        }
    }
    segments
}

/// Stitch segments into polylines by matching exactly equal endpoints.
/// Closed iso-lines come back with their first point repeated at the end.
pub fn chain_segments(segments: &[Segment]) -> Vec<Vec<Vec2>> {
    let mut used = vec![false; segments.len()];
    let mut chains = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let mut chain = vec![segments[start].a, segments[start].b];
        // Grow at the tail, then at the head, consuming any segment that
        // shares an endpoint.
        loop {
            let tail = *chain.last().expect("chains start with two points");
            match take_matching(segments, &mut used, tail) {
                Some(next) => chain.push(next),
                None => break,
            }
        }
        let closed = chain.len() > 2 && chain[0] == *chain.last().expect("non-empty");
        if !closed {
            loop {
                let head = chain[0];
                match take_matching(segments, &mut used, head) {
                    Some(next) => chain.insert(0, next),
                    None => break,
                }
            }
        }
        chains.push(chain);
    }
    chains
}

// Find an unused segment with an endpoint equal to `point`, mark it used,
// and return its other endpoint.
fn take_matching(segments: &[Segment], used: &mut [bool], point: Vec2) -> Option<Vec2> {
    for (idx, seg) in segments.iter().enumerate() {
        if used[idx] {
            continue;
        }
        if seg.a == point {
            used[idx] = true;
            return Some(seg.b);
        }
        if seg.b == point {
            used[idx] = true;
            return Some(seg.a);
        }
    }
    None
}
