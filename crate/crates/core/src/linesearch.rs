//! Step-size selection along a fixed search ray.
//!
//! The one-dimensional problem is `phi(alpha) = f(x + alpha * d)` for a
//! frozen point and direction. Three strategies are provided:
//!
//! * [`bracket_minimum`] + [`golden_section`] — an "exact" search: bracket
//!   a valley by geometric expansion, then shrink it by golden-ratio
//!   probes.
//! * [`backtracking_armijo`] — accept the first step in a geometric
//!   backoff sequence that achieves sufficient decrease.
//! * a fixed unit step needs no machinery and lives in the optimizer loop.
//!
//! All strategies consume a [`LineProblem`] so the caller controls (and
//! can count) every `phi` evaluation.

use core::fmt;

/// The 1-D slice of the objective along a search ray.
///
/// `phi0` and `dphi0` are the slice's value and directional derivative at
/// `alpha = 0`; callers compute them from quantities they already have, so
/// constructing a `LineProblem` never evaluates the objective.
pub struct LineProblem<F: FnMut(f64) -> f64> {
    pub phi: F,
    pub phi0: f64,
    pub dphi0: f64,
}

impl<F: FnMut(f64) -> f64> LineProblem<F> {
    pub fn new(phi: F, phi0: f64, dphi0: f64) -> Self {
        LineProblem { phi, phi0, dphi0 }
    }
}

/// A valley bracket: `0 <= a < interior < b` with
/// `phi(interior) < min(phi(a), phi(b))` and `phi(interior) < phi(0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub a: f64,
    pub b: f64,
    /// The probe that certifies the bracket holds a minimum.
    pub interior: f64,
    /// `phi(interior)`, saved so callers need not re-evaluate.
    pub f_interior: f64,
}

/// Why a line search gave up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LineSearchError {
    /// The ray is not a descent direction (`dphi0 >= 0`).
    NonDescentDirection,
    /// No valley could be bracketed: either `phi` kept falling through 60
    /// doublings (unbounded descent) or no probe below `phi(0)` was found
    /// through 60 halvings. `last_alpha` is the final step tried; callers
    /// use its size to tell "ray unbounded" from "no representable
    /// decrease left".
    BracketFailure { last_alpha: f64 },
    /// Backtracking exhausted its 60 backoffs without sufficient decrease.
    /// `last_alpha` is the final (smallest) step tried.
    LineSearchFailed { last_alpha: f64 },
}

impl fmt::Display for LineSearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineSearchError::NonDescentDirection => {
                f.write_str("search direction is not a descent direction")
            }
            LineSearchError::BracketFailure { last_alpha } => {
                write!(f, "failed to bracket a minimum (last step tried: {last_alpha:e})")
            }
            LineSearchError::LineSearchFailed { last_alpha } => {
                write!(f, "backtracking found no acceptable step (last tried: {last_alpha:e})")
            }
        }
    }
}

impl core::error::Error for LineSearchError {}

/// Both phases of bracketing are capped at this many probes; failure, not
/// an infinite loop, is the worst case.
const PHASE_CAP: u32 = 60;

/// Find `a < interior < b` enclosing a 1-D minimizer of `phi`.
///
/// Phase one halves `alpha` from `alpha_init` until a probe falls below
/// `phi(0)` (a descent direction guarantees one exists unless decrease is
/// smaller than float resolution). Phase two grows the step by `growth`
/// until `phi` rises again; the last three probes form the bracket.
pub fn bracket_minimum<F: FnMut(f64) -> f64>(
    lp: &mut LineProblem<F>,
    alpha_init: f64,
    growth: f64,
) -> Result<Bracket, LineSearchError> {
    debug_assert!(alpha_init > 0.0 && growth > 1.0);
    if lp.dphi0 >= 0.0 {
        return Err(LineSearchError::NonDescentDirection);
    }

    // Phase one: shrink until we are below phi(0).
    let mut alpha = alpha_init;
    let mut f_alpha = (lp.phi)(alpha);
    let mut shrinks = 0;
    while !(f_alpha < lp.phi0) {
        shrinks += 1;
        if shrinks > PHASE_CAP {
            return Err(LineSearchError::BracketFailure { last_alpha: alpha });
        }
        alpha *= 0.5;
        f_alpha = (lp.phi)(alpha);
    }

    // Phase two: expand until the slice rises; (prev, cur, next) then
    // bracket the valley.
    let mut prev = 0.0;
    let mut cur = alpha;
    let mut f_cur = f_alpha;
    for _ in 0..PHASE_CAP {
        let next = cur * growth;
        let f_next = (lp.phi)(next);
        // A non-finite probe counts as a rise: the valley ends before it.
        if !(f_next < f_cur) {
            return Ok(Bracket { a: prev, b: next, interior: cur, f_interior: f_cur });
        }
        prev = cur;
        cur = next;
        f_cur = f_next;
    }
    Err(LineSearchError::BracketFailure { last_alpha: cur })
}

/// Inverse golden ratio: the interval shrink factor per probe.
const INVPHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section refinement of a bracket down to width `tol`.
///
/// Returns the best probe *evaluated* during the whole search (the
/// bracket's interior included), so the result always satisfies
/// `phi(result) <= bracket.f_interior < phi(0)` even when `phi` is not
/// unimodal or probes go non-finite. For unimodal `phi` the result is
/// within `tol` of the true minimizer.
pub fn golden_section<F: FnMut(f64) -> f64>(
    lp: &mut LineProblem<F>,
    bracket: Bracket,
    tol: f64,
) -> f64 {
    debug_assert!(tol > 0.0);
    let mut a = bracket.a;
    let mut b = bracket.b;
    let mut best = bracket.interior;
    let mut f_best = bracket.f_interior;

    let mut x1 = b - INVPHI * (b - a);
    let mut x2 = a + INVPHI * (b - a);
    let mut f1 = (lp.phi)(x1);
    let mut f2 = (lp.phi)(x2);
    // Width shrinks by INVPHI per probe, so even a huge bracket collapses
    // well inside this cap.
    for _ in 0..200 {
        if f1 < f_best {
            best = x1;
            f_best = f1;
        }
        if f2 < f_best {
            best = x2;
            f_best = f2;
        }
        if b - a <= tol {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INVPHI * (b - a);
            f1 = (lp.phi)(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INVPHI * (b - a);
            f2 = (lp.phi)(x2);
        }
    }
    best
}

/// Bracket then refine: the full "exact" search. Returns the chosen step.
pub fn exact_search<F: FnMut(f64) -> f64>(
    lp: &mut LineProblem<F>,
    alpha_init: f64,
    growth: f64,
    tol: f64,
) -> Result<f64, LineSearchError> {
    let bracket = bracket_minimum(lp, alpha_init, growth)?;
    Ok(golden_section(lp, bracket, tol))
}

/// Largest step in `{alpha_init * rho^j}` with
/// `phi(alpha) <= phi(0) + c1 * alpha * dphi0` (sufficient decrease).
pub fn backtracking_armijo<F: FnMut(f64) -> f64>(
    lp: &mut LineProblem<F>,
    alpha_init: f64,
    c1: f64,
    rho: f64,
) -> Result<f64, LineSearchError> {
    debug_assert!(alpha_init > 0.0 && 0.0 < c1 && c1 < 1.0 && 0.0 < rho && rho < 1.0);
    if lp.dphi0 >= 0.0 {
        return Err(LineSearchError::NonDescentDirection);
    }
    let mut alpha = alpha_init;
    for _ in 0..=PHASE_CAP {
        let f_alpha = (lp.phi)(alpha);
        // NaN probes fail the comparison and back off, as they should.
        if f_alpha <= lp.phi0 + c1 * alpha * lp.dphi0 {
            return Ok(alpha);
        }
        alpha *= rho;
    }
    Err(LineSearchError::LineSearchFailed { last_alpha: alpha / rho })
}
