//! Search-direction rules and the outer minimization loop.
//!
//! Six methods share one iteration scheme, `x_{k+1} = x_k + alpha_k d_k`,
//! and differ only in how they pick the direction `d` (and, for
//! Levenberg-Marquardt, in how they accept or reject a trial):
//!
//! * steepest descent — `d = -g`;
//! * conjugate gradient — `d = -g + beta * d_prev`, with the
//!   Fletcher-Reeves or Polak-Ribiere mixing coefficient, restarted every
//!   `restart_period` steps and whenever conjugacy degrades into a
//!   non-descent direction;
//! * Newton — solve `H d = -g` with the analytic Hessian;
//! * DFP / BFGS — `d = -H_inv g` with a rank-two inverse-Hessian
//!   approximation rebuilt from observed displacements;
//! * Levenberg-Marquardt — solve `(H + lambda I) d = -g`, growing `lambda`
//!   when a trial fails to decrease `f` and shrinking it on success.
//!
//! [`minimize`] runs any of them to a [`Trace`]; every failure mode is
//! reported as a [`Termination`] reason rather than an error.

use alloc::string::String;
use alloc::vec::Vec;
use core::cell::Cell;
use core::fmt;

use crate::config::{ConfigError, LineSearchKind, Method, OptimizerConfig};
use crate::linalg::{solve2x2, Mat2, SolveError, Vec2};
use crate::linesearch::{backtracking_armijo, exact_search, LineProblem, LineSearchError};
use crate::objectives::Objective;
use crate::trace::{EvalCounters, IterationRecord, Termination, Trace};

/// The steepest-descent rule: straight down the gradient.
pub fn steepest_direction(grad: Vec2) -> Vec2 {
    -grad
}

/// Fletcher-Reeves mixing coefficient `|g|^2 / |g_prev|^2`.
pub fn fletcher_reeves_beta(grad: Vec2, prev_grad: Vec2) -> f64 {
    grad.dot(grad) / prev_grad.dot(prev_grad)
}

/// Polak-Ribiere mixing coefficient `g.(g - g_prev) / |g_prev|^2`, floored
/// at zero so a negative coefficient falls back to steepest descent
/// instead of reversing the history term.
pub fn polak_ribiere_beta(grad: Vec2, prev_grad: Vec2) -> f64 {
    (grad.dot(grad - prev_grad) / prev_grad.dot(prev_grad)).max(0.0)
}

/// Which conjugate-gradient coefficient [`cg_direction`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CgVariant {
    FletcherReeves,
    PolakRibiere,
}

/// Rolling conjugate-gradient history.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CgState {
    pub variant: CgVariant,
    pub prev_grad: Vec2,
    pub prev_dir: Vec2,
    /// Steps taken since the last restart; `0` means no usable history.
    pub steps_since_restart: u32,
    /// History is dropped every this many steps (default: the problem
    /// dimension, 2).
    pub restart_period: u32,
}

impl CgState {
    pub fn fresh(variant: CgVariant) -> Self {
        CgState {
            variant,
            prev_grad: Vec2::ZERO,
            prev_dir: Vec2::ZERO,
            steps_since_restart: 0,
            restart_period: 2,
        }
    }

    /// Record an accepted step so the next direction can mix against it.
    pub fn advance(&mut self, grad: Vec2, dir: Vec2) {
        self.prev_grad = grad;
        self.prev_dir = dir;
        self.steps_since_restart += 1;
    }

    /// Drop history; the next direction is plain steepest descent.
    pub fn restart(&mut self) {
        self.steps_since_restart = 0;
    }
}

/// The stored gradient history is unusable (zero previous gradient).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegenerateState;

impl fmt::Display for DegenerateState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("conjugate-gradient history holds a zero gradient")
    }
}

impl core::error::Error for DegenerateState {}

/// Conjugate-gradient direction `-g + beta * d_prev`.
///
/// A fresh state (or one that has reached its restart period) yields plain
/// steepest descent. Mixing against a zero stored gradient is reported as
/// [`DegenerateState`] rather than dividing by zero.
pub fn cg_direction(grad: Vec2, state: &CgState) -> Result<Vec2, DegenerateState> {
    if state.steps_since_restart == 0 || state.steps_since_restart >= state.restart_period {
        return Ok(-grad);
    }
    if state.prev_grad.dot(state.prev_grad) == 0.0 {
        return Err(DegenerateState);
    }
    let beta = match state.variant {
        CgVariant::FletcherReeves => fletcher_reeves_beta(grad, state.prev_grad),
        CgVariant::PolakRibiere => polak_ribiere_beta(grad, state.prev_grad),
    };
    Ok(-grad + state.prev_dir * beta)
}

/// Newton direction: solve `H d = -g` (never forms the explicit inverse).
pub fn newton_direction(grad: Vec2, hess: Mat2) -> Result<Vec2, SolveError> {
    solve2x2(hess, -grad)
}

/// Newton direction with a positive-definite safeguard: if the Hessian's
/// smallest eigenvalue is below a small positive floor, a multiple of the
/// identity is added before solving, so the result is always a descent
/// direction. Falls back to steepest descent if the shifted solve still
/// fails (it cannot, for finite symmetric input).
pub fn newton_direction_safeguarded(grad: Vec2, hess: Mat2) -> Vec2 {
    let h = hess.symmetrize();
    let scale = h.max_row_norm().max(1.0);
    let floor = 1e-8 * scale;
    let lambda_min = h.min_eigenvalue_symmetric();
    let shifted = if lambda_min < floor {
        h + Mat2::IDENTITY * (floor - lambda_min)
    } else {
        h
    };
    solve2x2(shifted, -grad).unwrap_or(-grad)
}

/// Which rank-two inverse-Hessian update [`quasi_newton_update`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QnVariant {
    Dfp,
    Bfgs,
}

/// Inverse-Hessian approximation plus the last displacement/gradient-change
/// pair it absorbed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiNewtonState {
    pub variant: QnVariant,
    pub h_inv: Mat2,
    /// Displacement `x_k - x_{k-1}` of the last absorbed update.
    pub s: Vec2,
    /// Gradient change `g_k - g_{k-1}` of the last absorbed update.
    pub y: Vec2,
}

impl QuasiNewtonState {
    /// Identity start: the first direction equals steepest descent.
    pub fn identity(variant: QnVariant) -> Self {
        QuasiNewtonState { variant, h_inv: Mat2::IDENTITY, s: Vec2::ZERO, y: Vec2::ZERO }
    }

    /// Drop the approximation back to the identity.
    pub fn reset(&mut self) {
        self.h_inv = Mat2::IDENTITY;
    }
}

/// Curvature threshold below which an update is skipped: `s.y` must exceed
/// this fraction of `|s||y|`.
const CURVATURE_TOL: f64 = 1e-10;

/// One rank-two inverse-Hessian update (DFP or BFGS form).
///
/// If the curvature `s.y` is not safely positive the update is skipped and
/// the prior matrix returned unchanged — the safeguard that keeps the
/// approximation positive definite. The result is symmetrized to stop
/// round-off drift, and a non-finite result is likewise discarded.
pub fn quasi_newton_update(h_inv: Mat2, s: Vec2, y: Vec2, variant: QnVariant) -> Mat2 {
    let sy = s.dot(y);
    if sy <= CURVATURE_TOL * s.norm() * y.norm() {
        return h_inv;
    }
    let updated = match variant {
        QnVariant::Dfp => {
            let hy = h_inv.mul_vec(y);
            let yhy = y.dot(hy);
            if yhy <= 0.0 {
                return h_inv;
            }
            h_inv + Mat2::outer(s, s) * (1.0 / sy) - Mat2::outer(hy, hy) * (1.0 / yhy)
        }
        QnVariant::Bfgs => {
            let rho = 1.0 / sy;
            let left = Mat2::IDENTITY - Mat2::outer(s, y) * rho;
            let right = Mat2::IDENTITY - Mat2::outer(y, s) * rho;
            left * h_inv * right + Mat2::outer(s, s) * rho
        }
    };
    let updated = updated.symmetrize();
    if updated.is_finite() {
        updated
    } else {
        h_inv
    }
}

/// Damping state for Levenberg-Marquardt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmState {
    pub lambda: f64,
}

/// Damped Newton direction: solve `(H + lambda I) d = -g`. With
/// `lambda -> 0` this is the Newton direction; with large `lambda` it
/// degenerates to a short steepest-descent step.
pub fn lm_direction(grad: Vec2, hess: Mat2, lambda: f64) -> Result<Vec2, SolveError> {
    solve2x2(hess + Mat2::IDENTITY * lambda, -grad)
}

/// Keep the damping parameter strictly positive and finite under repeated
/// rescaling.
const LM_LAMBDA_MIN: f64 = 1e-300;
const LM_LAMBDA_MAX: f64 = 1e300;

/// Run the configured method from `x0` until a stopping rule fires.
///
/// Stopping rules, in the order checked: gradient norm below
/// `cfg.grad_tol`; iteration cap; step norm below `cfg.step_tol` after a
/// move. Every failure (singular Hessian, exhausted line search,
/// non-finite evaluation) terminates the run with the matching
/// [`Termination`] — nothing is raised past the returned [`Trace`].
/// A line search that proves no representable decrease exists along a
/// descent ray (its last trial step shorter than `cfg.step_tol`) counts as
/// the step rule firing: the iterate cannot move at float resolution.
///
/// The trace satisfies [`Trace::validate`]: records replay the exact step
/// algebra, and the final record marks the resting point with a zero step.
/// Runs are deterministic — identical inputs give bit-identical traces.
///
/// Levenberg-Marquardt ignores `cfg.line_search`: its trials are always
/// full steps of the damped direction, and a rejected trial is recorded
/// with `alpha = 0` (the point does not move) before the damping is
/// increased.
///
/// Errors only on an invalid configuration; non-finite input `x0` (or a
/// non-finite evaluation at it) yields an empty-record trace terminated
/// with [`Termination::NonFiniteValue`].
pub fn minimize<O: Objective + ?Sized>(
    obj: &O,
    x0: Vec2,
    cfg: &OptimizerConfig,
) -> Result<Trace, ConfigError> {
    cfg.validate()?;

    let n_f = Cell::new(0u64);
    let mut n_grad = 0u64;
    let mut n_hess = 0u64;
    let eval = |p: Vec2| {
        n_f.set(n_f.get() + 1);
        obj.value(p)
    };

    let mut records: Vec<IterationRecord> = Vec::new();
    let bare = |termination: Termination, records: Vec<IterationRecord>, n_f: u64, n_grad, n_hess| Trace {
        function_name: String::from(obj.name()),
        method: cfg.method,
        x0,
        records,
        termination,
        counters: EvalCounters { n_f, n_grad, n_hess },
    };

    if !x0.is_finite() {
        return Ok(bare(Termination::NonFiniteValue, records, n_f.get(), n_grad, n_hess));
    }
    let mut p = x0;
    let mut f = eval(p);
    n_grad += 1;
    let mut g = obj.gradient(p);
    if !f.is_finite() || !g.is_finite() {
        return Ok(bare(Termination::NonFiniteValue, records, n_f.get(), n_grad, n_hess));
    }

    let mut cg = CgState::fresh(match cfg.method {
        Method::ConjugateGradientPr => CgVariant::PolakRibiere,
        _ => CgVariant::FletcherReeves,
    });
    let mut qn = QuasiNewtonState::identity(match cfg.method {
        Method::Dfp => QnVariant::Dfp,
        _ => QnVariant::Bfgs,
    });
    let mut lm = LmState { lambda: cfg.lm_lambda0 };
    let mut lm_hess: Option<Mat2> = None;
    let mut k = 0usize;

    let termination = loop {
        if g.norm() < cfg.grad_tol {
            break Termination::GradToleranceMet;
        }
        if k >= cfg.max_iter {
            break Termination::MaxIterReached;
        }

        if cfg.method == Method::LevenbergMarquardt {
            // Trial/accept/reject cycle; rejected trials stay in place and
            // raise the damping.
            if lm_hess.is_none() {
                n_hess += 1;
                let h = obj.hessian(p);
                if !h.is_finite() {
                    break Termination::NonFiniteValue;
                }
                lm_hess = Some(h);
            }
            let h = lm_hess.expect("cached above");
            let (d, f_trial) = match lm_direction(g, h, lm.lambda) {
                Ok(d) if d.is_finite() => {
                    let trial = p + d * 1.0;
                    let f_trial = if trial.is_finite() { eval(trial) } else { f64::NAN };
                    (d, f_trial)
                }
                // An unsolvable or overflowing damped system is treated as
                // a rejected trial of zero length.
                _ => (Vec2::ZERO, f64::NAN),
            };
            if f_trial.is_finite() && f_trial < f {
                let trial = p + d * 1.0;
                n_grad += 1;
                let g_trial = obj.gradient(trial);
                if !g_trial.is_finite() {
                    break Termination::NonFiniteValue;
                }
                records.push(
                    IterationRecord::new(k, p, f, g, d, 1.0).expect("commit inputs are finite"),
                );
                k += 1;
                let step_norm = (trial - p).norm();
                p = trial;
                f = f_trial;
                g = g_trial;
                lm_hess = None;
                lm.lambda = (lm.lambda * cfg.lm_decrease).max(LM_LAMBDA_MIN);
                if step_norm < cfg.step_tol {
                    break Termination::StepToleranceMet;
                }
            } else {
                records.push(
                    IterationRecord::new(k, p, f, g, d, 0.0).expect("commit inputs are finite"),
                );
                k += 1;
                lm.lambda = (lm.lambda * cfg.lm_increase).min(LM_LAMBDA_MAX);
            }
            continue;
        }

        // Direction.
        let mut d = match cfg.method {
            Method::SteepestDescent => steepest_direction(g),
            Method::ConjugateGradientFr | Method::ConjugateGradientPr => {
                if cg.steps_since_restart >= cg.restart_period {
                    cg.restart();
                }
                match cg_direction(g, &cg) {
                    Ok(d) => d,
                    Err(DegenerateState) => {
                        cg.restart();
                        -g
                    }
                }
            }
            Method::Newton => {
                n_hess += 1;
                let h = obj.hessian(p);
                if !h.is_finite() {
                    break Termination::NonFiniteValue;
                }
                if cfg.newton_pure_step {
                    match newton_direction(g, h) {
                        Ok(d) => d,
                        Err(SolveError::SingularMatrix) => break Termination::SingularHessian,
                    }
                } else {
                    newton_direction_safeguarded(g, h)
                }
            }
            Method::Dfp | Method::Bfgs => -qn.h_inv.mul_vec(g),
            Method::LevenbergMarquardt => unreachable!("handled above"),
        };
        if !d.is_finite() {
            break Termination::NonFiniteValue;
        }

        // Descent safeguard: methods that carry history drop it and fall
        // back to steepest descent rather than follow an uphill direction.
        let needs_descent = matches!(
            cfg.method,
            Method::ConjugateGradientFr
                | Method::ConjugateGradientPr
                | Method::Dfp
                | Method::Bfgs
        );
        if needs_descent && g.dot(d) >= 0.0 {
            match cfg.method {
                Method::ConjugateGradientFr | Method::ConjugateGradientPr => cg.restart(),
                _ => qn.reset(),
            }
            d = -g;
        }

        // Step length.
        let alpha = match cfg.line_search {
            LineSearchKind::FixedUnitStep => cfg.ls_params.initial_alpha,
            LineSearchKind::ExactGoldenSection => {
                let dphi0 = g.dot(d);
                let mut lp = LineProblem::new(|a| eval(p + d * a), f, dphi0);
                let seed = cfg.ls_params.initial_alpha * 1e-3 / (1.0 + d.norm());
                match exact_search(&mut lp, seed, cfg.ls_params.growth, cfg.ls_params.golden_tol)
                {
                    Ok(alpha) => alpha,
                    Err(e) => break line_search_termination(e, d.norm(), cfg.step_tol),
                }
            }
            LineSearchKind::BacktrackingArmijo => {
                let dphi0 = g.dot(d);
                let mut lp = LineProblem::new(|a| eval(p + d * a), f, dphi0);
                match backtracking_armijo(
                    &mut lp,
                    cfg.ls_params.initial_alpha,
                    cfg.ls_params.armijo_c1,
                    cfg.ls_params.backoff,
                ) {
                    Ok(alpha) => alpha,
                    Err(e) => break line_search_termination(e, d.norm(), cfg.step_tol),
                }
            }
        };

        // Evaluate the trial before committing anything, so records never
        // hold non-finite data.
        let trial = p + d * alpha;
        if !trial.is_finite() {
            break Termination::NonFiniteValue;
        }
        let f_trial = eval(trial);
        n_grad += 1;
        let g_trial = obj.gradient(trial);
        if !f_trial.is_finite() || !g_trial.is_finite() {
            break Termination::NonFiniteValue;
        }

        records
            .push(IterationRecord::new(k, p, f, g, d, alpha).expect("commit inputs are finite"));
        k += 1;

        match cfg.method {
            Method::ConjugateGradientFr | Method::ConjugateGradientPr => cg.advance(g, d),
            Method::Dfp | Method::Bfgs => {
                let s = trial - p;
                let y = g_trial - g;
                qn.h_inv = quasi_newton_update(qn.h_inv, s, y, qn.variant);
                qn.s = s;
                qn.y = y;
            }
            _ => {}
        }

        let step_norm = (trial - p).norm();
        p = trial;
        f = f_trial;
        g = g_trial;
        if step_norm < cfg.step_tol {
            break Termination::StepToleranceMet;
        }
    };

    records.push(
        IterationRecord::new(k, p, f, g, Vec2::ZERO, 0.0).expect("resting point is finite"),
    );
    Ok(bare(termination, records, n_f.get(), n_grad, n_hess))
}

/// Map a line-search failure to a stopping reason. A failed search on a
/// descent ray whose final trial step was already below the step tolerance
/// means the iterate is pinned at float resolution — that is the step rule
/// firing, not a search defect.
fn line_search_termination(e: LineSearchError, dir_norm: f64, step_tol: f64) -> Termination {
    match e {
        LineSearchError::NonDescentDirection => Termination::LineSearchFailed,
        LineSearchError::BracketFailure { last_alpha }
        | LineSearchError::LineSearchFailed { last_alpha } => {
            if last_alpha * dir_norm < step_tol {
                Termination::StepToleranceMet
            } else {
                Termination::LineSearchFailed
            }
        }
    }
}
