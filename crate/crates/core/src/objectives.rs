//! Benchmark objective functions with analytic derivatives, plus the
//! central finite-difference oracle used to cross-check them.
//!
//! Four classic two-variable minimization problems live here:
//!
//! * [`rosenbrock`] — the banana valley `(1-x)^2 + 100(y-x^2)^2`.
//! * [`spring_force`] — the potential energy of a point pulled by two
//!   linear springs and two constant loads.
//! * [`ackley`] — an Ackley-style surface with a slow radial decay
//!   (`-0.02` in the exponential), which puts a shallow cone at the origin.
//! * [`himmelblau`] — `(x^2+y-11)^2 + (x+y^2-7)^2` with four minima.
//!
//! Each function carries its plotting window and a catalogue of the minima
//! it is known to have. Catalogues are not hard-coded: they are produced at
//! construction time by the brute-force grid oracle in [`crate::bench`],
//! polished by Newton iterations on the analytic derivatives until the
//! gradient norm drops below `1e-12`. Tests certify the catalogues against
//! independent dense scans.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{E, PI, TAU};
use core::fmt;

use crate::linalg::{solve2x2, Mat2, Rect, Vec2};

/// Anything the minimization loop can descend on: a scalar field on the
/// plane with analytic first and second derivatives.
///
/// [`ObjectiveFunction`] implements this for the benchmark catalogue;
/// tests implement it for synthetic surfaces (quadratics, and so on).
pub trait Objective {
    fn value(&self, p: Vec2) -> f64;
    fn gradient(&self, p: Vec2) -> Vec2;
    fn hessian(&self, p: Vec2) -> Mat2;
    /// Short name used in traces and file names.
    fn name(&self) -> &str {
        "custom"
    }
}

/// Which spring layout [`spring_force`] models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpringVariant {
    /// Both springs hang from anchors on the positive y axis, at heights
    /// `l1` and `l2` (the second radical reads `l2 - y`). This is the
    /// layout whose minimum the grid oracle certifies near
    /// `(7.6269, 17.6263)`, and the default.
    #[default]
    AnchorsAbove,
    /// The second spring is instead anchored below the origin at depth
    /// `l2` (the second radical reads `l2 + y`), opposite the first.
    OppositeAnchors,
}

/// The analytic core of an objective; parameters included.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Form {
    Rosenbrock {
        a: f64,
        b: f64,
    },
    Spring {
        k1: f64,
        k2: f64,
        p1: f64,
        p2: f64,
        l1: f64,
        l2: f64,
        variant: SpringVariant,
    },
    Ackley {
        decay: f64,
    },
    Himmelblau,
}

impl Form {
    fn value(&self, p: Vec2) -> f64 {
        let (x, y) = (p.x, p.y);
        match *self {
            Form::Rosenbrock { a, b } => {
                let t = a - x;
                let q = y - x * x;
                t * t + b * q * q
            }
            Form::Spring { k1, k2, p1, p2, l1, l2, variant } => {
                let s1 = spring_term(p, l1, k1, l1);
                let anchor2 = anchor2_height(variant, l2);
                let s2 = spring_term(p, anchor2, k2, l2);
                s1.energy + s2.energy - p1 * x - p2 * y
            }
            Form::Ackley { decay } => {
                // Transcendentals go through libm directly so values do not
                // depend on which math provider the final build links.
                let s = libm::sqrt(0.5 * (x * x + y * y));
                let m = 0.5 * (libm::cos(TAU * x) + libm::cos(TAU * y));
                -20.0 * libm::exp(-decay * s) - libm::exp(m) + E + 20.0
            }
            Form::Himmelblau => {
                let u = x * x + y - 11.0;
                let v = x + y * y - 7.0;
                u * u + v * v
            }
        }
    }

    fn gradient(&self, p: Vec2) -> Vec2 {
        let (x, y) = (p.x, p.y);
        match *self {
            Form::Rosenbrock { a, b } => {
                let q = y - x * x;
                Vec2::new(-2.0 * (a - x) - 4.0 * b * x * q, 2.0 * b * q)
            }
            Form::Spring { k1, k2, p1, p2, l1, l2, variant } => {
                let s1 = spring_term(p, l1, k1, l1);
                let anchor2 = anchor2_height(variant, l2);
                let s2 = spring_term(p, anchor2, k2, l2);
                s1.grad + s2.grad - Vec2::new(p1, p2)
            }
            Form::Ackley { decay } => {
                let s = libm::sqrt(0.5 * (x * x + y * y));
                let m = 0.5 * (libm::cos(TAU * x) + libm::cos(TAU * y));
                let em = libm::exp(m);
                let cos_part =
                    Vec2::new(PI * libm::sin(TAU * x) * em, PI * libm::sin(TAU * y) * em);
                if s == 0.0 {
                    // The radial term has a cone apex here; its subgradient
                    // contains zero, which is the value reported.
                    cos_part
                } else {
                    let radial = 10.0 * decay * libm::exp(-decay * s) / s;
                    Vec2::new(radial * x, radial * y) + cos_part
                }
            }
            Form::Himmelblau => {
                let u = x * x + y - 11.0;
                let v = x + y * y - 7.0;
                Vec2::new(4.0 * x * u + 2.0 * v, 2.0 * u + 4.0 * y * v)
            }
        }
    }

    fn hessian(&self, p: Vec2) -> Mat2 {
        let (x, y) = (p.x, p.y);
        match *self {
            Form::Rosenbrock { a: _, b } => {
                let q = y - x * x;
                Mat2::symmetric(2.0 - 4.0 * b * q + 8.0 * b * x * x, -4.0 * b * x, 2.0 * b)
            }
            Form::Spring { k1, k2, p1: _, p2: _, l1, l2, variant } => {
                let s1 = spring_term(p, l1, k1, l1);
                let anchor2 = anchor2_height(variant, l2);
                let s2 = spring_term(p, anchor2, k2, l2);
                (s1.hess + s2.hess).symmetrize()
            }
            Form::Ackley { decay } => {
                let s = libm::sqrt(0.5 * (x * x + y * y));
                let m = 0.5 * (libm::cos(TAU * x) + libm::cos(TAU * y));
                let em = libm::exp(m);
                let (sx, sy) = (libm::sin(TAU * x), libm::sin(TAU * y));
                let cos_part = Mat2::symmetric(
                    em * (TAU * PI * libm::cos(TAU * x) - PI * PI * sx * sx),
                    -PI * PI * sx * sy * em,
                    em * (TAU * PI * libm::cos(TAU * y) - PI * PI * sy * sy),
                );
                if s == 0.0 {
                    // Matches the subgradient convention in `gradient`: the
                    // cone contributes nothing at its apex.
                    cos_part
                } else {
                    let e = libm::exp(-decay * s);
                    let c = 10.0 * decay * e;
                    let s2 = s * s;
                    let s3 = s2 * s;
                    let radial = Mat2::symmetric(
                        c * (1.0 / s - x * x / (2.0 * s3) - decay * x * x / (2.0 * s2)),
                        c * (-x * y / (2.0 * s3) - decay * x * y / (2.0 * s2)),
                        c * (1.0 / s - y * y / (2.0 * s3) - decay * y * y / (2.0 * s2)),
                    );
                    (radial + cos_part).symmetrize()
                }
            }
            Form::Himmelblau => Mat2::symmetric(
                12.0 * x * x + 4.0 * y - 42.0,
                4.0 * (x + y),
                12.0 * y * y + 4.0 * x - 26.0,
            ),
        }
    }
}

fn anchor2_height(variant: SpringVariant, l2: f64) -> f64 {
    match variant {
        SpringVariant::AnchorsAbove => l2,
        SpringVariant::OppositeAnchors => -l2,
    }
}

struct SpringTerm {
    energy: f64,
    grad: Vec2,
    hess: Mat2,
}

/// Energy, gradient, and Hessian of one spring of stiffness `k` and natural
/// length `l` anchored at `(0, anchor_y)`. At the anchor itself the radical
/// is not differentiable; the spring then contributes only its energy and
/// the zero element of its subdifferential, which keeps the surface usable
/// everywhere.
fn spring_term(p: Vec2, anchor_y: f64, k: f64, l: f64) -> SpringTerm {
    let d = Vec2::new(p.x, p.y - anchor_y);
    let r = d.norm();
    let e = r - l;
    let energy = 0.5 * k * e * e;
    if r == 0.0 {
        return SpringTerm { energy, grad: Vec2::ZERO, hess: Mat2::new(0.0, 0.0, 0.0, 0.0) };
    }
    let u = d * (1.0 / r);
    let uut = Mat2::outer(u, u);
    let grad = u * (k * e);
    let hess = uut * k + (Mat2::IDENTITY - uut) * (k * e / r);
    SpringTerm { energy, grad, hess }
}

/// A benchmark objective: the analytic surface plus the metadata the bench
/// protocol and the plotting layer need.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveFunction {
    name: String,
    form: Form,
    plot_domain: Rect,
    known_minima: Vec<Vec2>,
}

impl ObjectiveFunction {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The window plots and oracle scans default to.
    pub fn plot_domain(&self) -> Rect {
        self.plot_domain
    }

    /// Catalogued minima, each polished until its gradient norm is below
    /// `1e-12`. Ordered counterclockwise by quadrant starting from
    /// `x >= 0, y >= 0`, then by `x`; sweep basin labels index into this
    /// slice.
    pub fn known_minima(&self) -> &[Vec2] {
        &self.known_minima
    }

    pub fn value(&self, p: Vec2) -> f64 {
        self.form.value(p)
    }

    pub fn gradient(&self, p: Vec2) -> Vec2 {
        self.form.gradient(p)
    }

    pub fn hessian(&self, p: Vec2) -> Mat2 {
        self.form.hessian(p)
    }
}

impl Objective for ObjectiveFunction {
    fn value(&self, p: Vec2) -> f64 {
        self.form.value(p)
    }
    fn gradient(&self, p: Vec2) -> Vec2 {
        self.form.gradient(p)
    }
    fn hessian(&self, p: Vec2) -> Mat2 {
        self.form.hessian(p)
    }
    fn name(&self) -> &str {
        &self.name
    }
}

/// Registry order for the benchmark catalogue.
pub const FUNCTION_NAMES: [&str; 4] = ["rosenbrock", "spring", "ackley", "himmelblau"];

/// Look a benchmark function up by its registry name.
pub fn by_name(name: &str) -> Option<ObjectiveFunction> {
    match name {
        "rosenbrock" => Some(rosenbrock()),
        "spring" => Some(spring_force(SpringVariant::default())),
        "ackley" => Some(ackley()),
        "himmelblau" => Some(himmelblau()),
        _ => None,
    }
}

/// `(1 - x)^2 + 100 (y - x^2)^2`: a curved valley with its only minimum at
/// `(1, 1)`, where both terms vanish.
pub fn rosenbrock() -> ObjectiveFunction {
    ObjectiveFunction {
        name: String::from("rosenbrock"),
        form: Form::Rosenbrock { a: 1.0, b: 100.0 },
        plot_domain: Rect::new(-2.0, 2.0, -1.0, 4.0),
        known_minima: alloc::vec![Vec2::new(1.0, 1.0)],
    }
}

/// Two-spring equilibrium energy with the default constants: stiffnesses
/// `k1 = 8, k2 = 1` (N/cm), loads `p1 = p2 = 5` (N), natural lengths
/// `l1 = l2 = 10` (cm).
pub fn spring_force(variant: SpringVariant) -> ObjectiveFunction {
    spring_force_with(8.0, 1.0, 5.0, 5.0, 10.0, 10.0, variant)
}

/// Two-spring equilibrium energy
/// `k1/2 (sqrt(x^2+(l1-y)^2) - l1)^2 + k2/2 (sqrt(x^2+(l2∓y)^2) - l2)^2 - p1 x - p2 y`
/// with explicit constants. The minimum catalogue is computed by the grid
/// oracle over the plot window and Newton-polished.
pub fn spring_force_with(
    k1: f64,
    k2: f64,
    p1: f64,
    p2: f64,
    l1: f64,
    l2: f64,
    variant: SpringVariant,
) -> ObjectiveFunction {
    let form = Form::Spring { k1, k2, p1, p2, l1, l2, variant };
    let plot_domain = Rect::new(-10.0, 15.0, -5.0, 25.0);
    let seed = crate::bench::grid_argmin_oracle(|p| form.value(p), plot_domain, 101, 4);
    let minimum = newton_polish(&form, seed);
    ObjectiveFunction {
        name: String::from("spring"),
        form,
        plot_domain,
        known_minima: alloc::vec![minimum],
    }
}

/// Ackley-style surface with the default radial decay `0.02`.
pub fn ackley() -> ObjectiveFunction {
    ackley_with_decay(0.02)
}

/// `-20 exp(-c sqrt((x^2+y^2)/2)) - exp((cos 2πx + cos 2πy)/2) + e + 20`.
///
/// With the small default decay `c = 0.02` the radial exponential is nearly
/// linear over the window, so the surface is a shallow cone at the origin
/// ringed by the cosine field. The gradient norm therefore does *not* go to
/// zero along paths into the minimum; runs stop on the step-size rule
/// instead of the gradient rule.
pub fn ackley_with_decay(decay: f64) -> ObjectiveFunction {
    ObjectiveFunction {
        name: String::from("ackley"),
        form: Form::Ackley { decay },
        plot_domain: Rect::new(-0.5, 0.5, -0.5, 0.5),
        known_minima: alloc::vec![Vec2::ZERO],
    }
}

/// `(x^2 + y - 11)^2 + (x + y^2 - 7)^2`: four zero-valued minima, one per
/// quadrant, found by the grid oracle and Newton-polished.
pub fn himmelblau() -> ObjectiveFunction {
    let form = Form::Himmelblau;
    let plot_domain = Rect::new(-6.0, 6.0, -6.0, 6.0);
    let mut minima: Vec<Vec2> =
        crate::bench::grid_minima_oracle(|p| form.value(p), plot_domain, 61, 2)
            .into_iter()
            .map(|seed| newton_polish(&form, seed))
            .collect();
    sort_by_quadrant(&mut minima);
    ObjectiveFunction {
        name: String::from("himmelblau"),
        form,
        plot_domain,
        known_minima: minima,
    }
}

/// Quadrant order: `(+,+)`, `(-,+)`, `(-,-)`, `(+,-)`, counterclockwise
/// from the first quadrant; ties broken by `x` then `y`.
fn sort_by_quadrant(points: &mut [Vec2]) {
    fn quadrant(p: Vec2) -> u8 {
        match (p.x >= 0.0, p.y >= 0.0) {
            (true, true) => 0,
            (false, true) => 1,
            (false, false) => 2,
            (true, false) => 3,
        }
    }
    points.sort_by(|a, b| {
        quadrant(*a)
            .cmp(&quadrant(*b))
            .then(a.x.partial_cmp(&b.x).expect("finite"))
            .then(a.y.partial_cmp(&b.y).expect("finite"))
    });
}

/// Newton iterations from an oracle-quality seed down to
/// `‖gradient‖ < 1e-12`. Returns the best iterate seen if the polish stalls
/// (it does not, for the catalogued surfaces).
fn newton_polish(form: &Form, seed: Vec2) -> Vec2 {
    let mut p = seed;
    let mut best = seed;
    let mut best_norm = form.gradient(seed).norm();
    for _ in 0..50 {
        let g = form.gradient(p);
        let n = g.norm();
        if n < best_norm {
            best = p;
            best_norm = n;
        }
        if n < 1e-12 {
            return p;
        }
        match solve2x2(form.hessian(p), -g) {
            Ok(d) => {
                let next = p + d;
                if !next.is_finite() {
                    break;
                }
                p = next;
            }
            Err(_) => break,
        }
    }
    best
}

/// Settings for the central finite-difference oracle. Both base steps are
/// scaled per coordinate by `max(1, |coordinate|)`.
///
/// The Hessian step is much larger than the gradient step on purpose:
/// second differences divide rounding noise by `h^2`, so the usable
/// minimum is near `eps^(1/4)`, while first differences only divide by
/// `2h` and tolerate `h` near `eps^(1/3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdSettings {
    /// Base step for first differences (gradient).
    pub h: f64,
    /// Base step for second differences (Hessian).
    pub h_hessian: f64,
}

impl Default for FdSettings {
    fn default() -> Self {
        FdSettings { h: 1e-6, h_hessian: 1e-4 }
    }
}

/// A finite-difference sample came back NaN or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonFiniteSample;

impl fmt::Display for NonFiniteSample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("objective returned a non-finite value at a finite-difference sample")
    }
}

impl core::error::Error for NonFiniteSample {}

/// Central-difference gradient: `(f(p + h e_i) - f(p - h e_i)) / 2h` per
/// coordinate. This is the independent check analytic gradients are tested
/// against; it deliberately knows nothing about their closed forms.
pub fn fd_gradient<F: Fn(Vec2) -> f64>(
    f: F,
    p: Vec2,
    settings: FdSettings,
) -> Result<Vec2, NonFiniteSample> {
    let hx = settings.h * p.x.abs().max(1.0);
    let hy = settings.h * p.y.abs().max(1.0);
    let samples = [
        f(Vec2::new(p.x + hx, p.y)),
        f(Vec2::new(p.x - hx, p.y)),
        f(Vec2::new(p.x, p.y + hy)),
        f(Vec2::new(p.x, p.y - hy)),
    ];
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(NonFiniteSample);
    }
    Ok(Vec2::new(
        (samples[0] - samples[1]) / (2.0 * hx),
        (samples[2] - samples[3]) / (2.0 * hy),
    ))
}

/// Central-difference Hessian: second differences on the diagonal, the
/// four-corner stencil for the cross term. The cross term is computed once
/// and stored symmetrically.
pub fn fd_hessian<F: Fn(Vec2) -> f64>(
    f: F,
    p: Vec2,
    settings: FdSettings,
) -> Result<Mat2, NonFiniteSample> {
    let hx = settings.h_hessian * p.x.abs().max(1.0);
    let hy = settings.h_hessian * p.y.abs().max(1.0);
    let f0 = f(p);
    let fxp = f(Vec2::new(p.x + hx, p.y));
    let fxm = f(Vec2::new(p.x - hx, p.y));
    let fyp = f(Vec2::new(p.x, p.y + hy));
    let fym = f(Vec2::new(p.x, p.y - hy));
    let fpp = f(Vec2::new(p.x + hx, p.y + hy));
    let fpm = f(Vec2::new(p.x + hx, p.y - hy));
    let fmp = f(Vec2::new(p.x - hx, p.y + hy));
    let fmm = f(Vec2::new(p.x - hx, p.y - hy));
    let all = [f0, fxp, fxm, fyp, fym, fpp, fpm, fmp, fmm];
    if all.iter().any(|v| !v.is_finite()) {
        return Err(NonFiniteSample);
    }
    let dxx = (fxp - 2.0 * f0 + fxm) / (hx * hx);
    let dyy = (fyp - 2.0 * f0 + fym) / (hy * hy);
    let dxy = (fpp - fpm - fmp + fmm) / (4.0 * hx * hy);
    Ok(Mat2::symmetric(dxx, dxy, dyy))
}
