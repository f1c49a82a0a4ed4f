//! Fixed-size linear algebra for the planar optimization kernel.
//!
//! The optimizers need exactly four things from linear algebra: dot
//! products, norms, symmetric 2x2 matrices, and the solve `A d = b` that
//! Newton-type methods perform once per iteration. All of it has closed
//! forms in two dimensions, so this module implements them directly rather
//! than pulling in a general matrix crate. [`solve2x2`] is the single
//! funnel every Newton-family direction goes through, and it is the one
//! place near-singularity is detected and reported.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

/// A point, gradient, or search direction in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    /// Dot product.
    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Squared Euclidean norm.
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    /// Euclidean norm, `sqrt(dot(v, v))`.
    pub fn norm(self) -> f64 {
        // All math routines come from libm so results are bit-identical
        // regardless of which other crates end up in the build graph.
        libm::sqrt(self.norm_sq())
    }

    /// Euclidean distance to `other`.
    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    /// True when both components are finite (no NaN, no infinities).
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, t: f64) -> Vec2 {
        Vec2::new(self.x * t, self.y * t)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A 2x2 matrix, stored row-major.
///
/// Hessians are expected to be symmetric; [`Mat2::is_symmetric`] is the
/// check callers assert against, and quasi-Newton updates re-symmetrize
/// explicitly so rounding cannot let the off-diagonal entries drift apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        a11: 1.0,
        a12: 0.0,
        a21: 0.0,
        a22: 1.0,
    };

    pub const fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    /// Symmetric matrix from its three distinct entries.
    pub const fn symmetric(a11: f64, a12: f64, a22: f64) -> Self {
        Mat2 {
            a11,
            a12,
            a21: a12,
            a22,
        }
    }

    /// Outer product `u vᵀ`.
    pub fn outer(u: Vec2, v: Vec2) -> Mat2 {
        Mat2::new(u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y)
    }

    /// Matrix-vector product.
    pub fn mul_vec(self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.a11 * v.x + self.a12 * v.y,
            self.a21 * v.x + self.a22 * v.y,
        )
    }

    pub fn det(self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(self) -> f64 {
        self.a11 + self.a22
    }

    /// Largest Euclidean row norm; the scale [`solve2x2`] measures the
    /// determinant against.
    pub fn max_row_norm(self) -> f64 {
        let r1 = Vec2::new(self.a11, self.a12).norm();
        let r2 = Vec2::new(self.a21, self.a22).norm();
        r1.max(r2)
    }

    /// Whether the off-diagonal entries agree to within `1e-12` relative to
    /// their own size (always at least `1e-12` absolute).
    pub fn is_symmetric(self) -> bool {
        let scale = 1.0_f64.max(self.a12.abs()).max(self.a21.abs());
        (self.a12 - self.a21).abs() <= 1e-12 * scale
    }

    /// Replace both off-diagonal entries with their average.
    pub fn symmetrize(self) -> Mat2 {
        let off = 0.5 * (self.a12 + self.a21);
        Mat2::new(self.a11, off, off, self.a22)
    }

    /// Smallest eigenvalue, assuming the matrix is symmetric.
    pub fn min_eigenvalue_symmetric(self) -> f64 {
        let mean = 0.5 * (self.a11 + self.a22);
        let half_diff = 0.5 * (self.a11 - self.a22);
        mean - libm::sqrt(half_diff * half_diff + self.a12 * self.a21)
    }

    pub fn is_finite(self) -> bool {
        self.a11.is_finite() && self.a12.is_finite() && self.a21.is_finite() && self.a22.is_finite()
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 + rhs.a11,
            self.a12 + rhs.a12,
            self.a21 + rhs.a21,
            self.a22 + rhs.a22,
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 - rhs.a11,
            self.a12 - rhs.a12,
            self.a21 - rhs.a21,
            self.a22 - rhs.a22,
        )
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, t: f64) -> Mat2 {
        Mat2::new(self.a11 * t, self.a12 * t, self.a21 * t, self.a22 * t)
    }
}

impl Mul<Mat2> for Mat2 {
    type Output = Mat2;
    fn mul(self, r: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * r.a11 + self.a12 * r.a21,
            self.a11 * r.a12 + self.a12 * r.a22,
            self.a21 * r.a11 + self.a22 * r.a21,
            self.a21 * r.a12 + self.a22 * r.a22,
        )
    }
}

/// Failure from [`solve2x2`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveError {
    /// The matrix is singular, or close enough to singular that a solve
    /// would amplify rounding noise past any useful accuracy.
    SingularMatrix,
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::SingularMatrix => write!(f, "matrix is singular to working precision"),
        }
    }
}

impl core::error::Error for SolveError {}

/// Solve the 2x2 system `A x = b` by Gaussian elimination with partial
/// pivoting.
///
/// Returns [`SolveError::SingularMatrix`] when `|det(A)|` is at or below
/// `1e-14` times the largest row norm of `A`, which is roughly where a 2x2
/// solve stops producing usable digits.
///
/// # Examples
///
/// ```
/// use gradbench_core::linalg::{solve2x2, Mat2, Vec2};
///
/// let x = solve2x2(Mat2::IDENTITY, Vec2::new(3.0, 4.0)).unwrap();
/// assert_eq!(x, Vec2::new(3.0, 4.0));
///
/// let a = Mat2::symmetric(2.0, 0.0, 2.0);
/// let x = solve2x2(a, Vec2::new(6.0, 8.0)).unwrap();
/// assert_eq!(x, Vec2::new(3.0, 4.0));
/// ```
pub fn solve2x2(a: Mat2, b: Vec2) -> Result<Vec2, SolveError> {
    let scale = a.max_row_norm();
    if a.det().abs() <= 1e-14 * scale {
        return Err(SolveError::SingularMatrix);
    }
    if a.a11.abs() >= a.a21.abs() {
        let m = a.a21 / a.a11;
        let u22 = a.a22 - m * a.a12;
        let y = (b.y - m * b.x) / u22;
        let x = (b.x - a.a12 * y) / a.a11;
        Ok(Vec2::new(x, y))
    } else {
        // Swap rows so the larger entry pivots.
        let m = a.a11 / a.a21;
        let u12 = a.a12 - m * a.a22;
        let y = (b.x - m * b.y) / u12;
        let x = (b.y - a.a22 * y) / a.a21;
        Ok(Vec2::new(x, y))
    }
}

/// An axis-aligned rectangle `[x_lo, x_hi] × [y_lo, y_hi]`, used for plot
/// windows, oracle scan domains, and sweep sampling regions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl Rect {
    pub const fn new(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Self {
        Rect {
            x_lo,
            x_hi,
            y_lo,
            y_hi,
        }
    }

    /// The rectangle of the given width and height centered at `center`.
    pub fn centered(center: Vec2, width: f64, height: f64) -> Self {
        Rect::new(
            center.x - 0.5 * width,
            center.x + 0.5 * width,
            center.y - 0.5 * height,
            center.y + 0.5 * height,
        )
    }

    pub fn width(self) -> f64 {
        self.x_hi - self.x_lo
    }

    pub fn height(self) -> f64 {
        self.y_hi - self.y_lo
    }

    pub fn center(self) -> Vec2 {
        Vec2::new(0.5 * (self.x_lo + self.x_hi), 0.5 * (self.y_lo + self.y_hi))
    }

    pub fn contains(self, p: Vec2) -> bool {
        p.x >= self.x_lo && p.x <= self.x_hi && p.y >= self.y_lo && p.y <= self.y_hi
    }

    /// Intersection with `other`. The caller is responsible for the two
    /// rectangles actually overlapping; a degenerate result means they did
    /// not.
    pub fn intersect(self, other: Rect) -> Rect {
        Rect::new(
            self.x_lo.max(other.x_lo),
            self.x_hi.min(other.x_hi),
            self.y_lo.max(other.y_lo),
            self.y_hi.min(other.y_hi),
        )
    }

    /// The nearest point of the rectangle to `p`.
    pub fn clamp(self, p: Vec2) -> Vec2 {
        Vec2::new(p.x.max(self.x_lo).min(self.x_hi), p.y.max(self.y_lo).min(self.y_hi))
    }
}
