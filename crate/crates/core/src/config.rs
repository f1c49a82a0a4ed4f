//! Run configuration: method selection, line-search knobs, stopping rules.

use core::fmt;

/// The minimization methods the benchmark knows how to run.
///
/// [`Method::name`] / [`Method::from_name`] speak the short registry names
/// used on the command line and in file formats: `sd`, `cg-fr`, `cg-pr`,
/// `newton`, `dfp`, `bfgs`, `lm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    SteepestDescent,
    /// Conjugate gradient with the Fletcher-Reeves factor.
    ConjugateGradientFr,
    /// Conjugate gradient with the Polak-Ribiere factor, floored at zero.
    ConjugateGradientPr,
    Newton,
    /// Quasi-Newton with the DFP inverse-Hessian update.
    Dfp,
    /// Quasi-Newton with the BFGS inverse-Hessian update.
    Bfgs,
    LevenbergMarquardt,
}

impl Method {
    /// Every implemented method, in registry order.
    pub const ALL: [Method; 7] = [
        Method::SteepestDescent,
        Method::ConjugateGradientFr,
        Method::ConjugateGradientPr,
        Method::Newton,
        Method::Dfp,
        Method::Bfgs,
        Method::LevenbergMarquardt,
    ];

    /// The six methods a full benchmark matrix runs when asked for "all":
    /// both quasi-Newton updates are implemented, but the default matrix
    /// carries one (BFGS); DFP stays available by explicit request.
    pub const MATRIX: [Method; 6] = [
        Method::SteepestDescent,
        Method::ConjugateGradientFr,
        Method::ConjugateGradientPr,
        Method::Newton,
        Method::Bfgs,
        Method::LevenbergMarquardt,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            Method::SteepestDescent => "sd",
            Method::ConjugateGradientFr => "cg-fr",
            Method::ConjugateGradientPr => "cg-pr",
            Method::Newton => "newton",
            Method::Dfp => "dfp",
            Method::Bfgs => "bfgs",
            Method::LevenbergMarquardt => "lm",
        }
    }

    pub fn from_name(name: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == name)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Step-length policies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineSearchKind {
    /// Bracket the one-dimensional minimum along the ray, then shrink the
    /// bracket with golden sections.
    ExactGoldenSection,
    /// Backtrack from a full trial step until the Armijo
    /// sufficient-decrease test accepts.
    BacktrackingArmijo,
    /// Always take the full step `alpha = 1` (no search).
    FixedUnitStep,
}

impl LineSearchKind {
    /// The conventional pairing: exact searches for the first-order
    /// methods, full steps for the Newton family, backtracking for
    /// quasi-Newton.
    pub const fn default_for(method: Method) -> LineSearchKind {
        match method {
            Method::SteepestDescent | Method::ConjugateGradientFr | Method::ConjugateGradientPr => {
                LineSearchKind::ExactGoldenSection
            }
            Method::Newton | Method::LevenbergMarquardt => LineSearchKind::FixedUnitStep,
            Method::Dfp | Method::Bfgs => LineSearchKind::BacktrackingArmijo,
        }
    }
}

/// Knobs shared by the line searches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSearchParams {
    /// Multiplier applied while expanding a bracket.
    pub growth: f64,
    /// Absolute interval width at which golden sectioning stops.
    pub golden_tol: f64,
    /// Armijo sufficient-decrease coefficient.
    pub armijo_c1: f64,
    /// Backtracking multiplier, in `(0, 1)`.
    pub backoff: f64,
    /// First trial step for backtracking; also scales the seed step the
    /// bracketing phase starts from.
    pub initial_alpha: f64,
}

impl Default for LineSearchParams {
    fn default() -> Self {
        LineSearchParams {
            growth: 2.0,
            golden_tol: 1e-10,
            armijo_c1: 1e-4,
            backoff: 0.5,
            initial_alpha: 1.0,
        }
    }
}

/// Everything [`crate::minimize`] needs besides the objective and the
/// starting point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub method: Method,
    /// Stop when the gradient norm falls below this.
    pub grad_tol: f64,
    /// Stop when an accepted step is shorter than this.
    pub step_tol: f64,
    /// Hard cap on steps taken (accepted or, for Levenberg-Marquardt,
    /// rejected).
    pub max_iter: usize,
    pub line_search: LineSearchKind,
    pub ls_params: LineSearchParams,
    /// Take raw `alpha = 1` Newton steps. When false, Newton directions are
    /// computed from a positive-definite-shifted curvature matrix and fed
    /// through `line_search` like any other descent direction.
    pub newton_pure_step: bool,
    /// Initial Levenberg-Marquardt damping.
    pub lm_lambda0: f64,
    /// Damping multiplier after a rejected trial step.
    pub lm_increase: f64,
    /// Damping multiplier after an accepted step.
    pub lm_decrease: f64,
}

impl OptimizerConfig {
    /// Defaults for `method`, with the method's conventional line search.
    pub fn new(method: Method) -> Self {
        OptimizerConfig {
            method,
            grad_tol: 1e-6,
            step_tol: 1e-12,
            max_iter: 2000,
            line_search: LineSearchKind::default_for(method),
            ls_params: LineSearchParams::default(),
            newton_pure_step: true,
            lm_lambda0: 1e-3,
            lm_increase: 10.0,
            lm_decrease: 0.1,
        }
    }

    /// Check that every tolerance and schedule constant is usable. The
    /// minimization loop itself degrades gracefully on odd values (it can
    /// only ever stop with a termination reason), so this is the validation
    /// front ends run before accepting user input.
    pub fn validate(&self) -> Result<(), ConfigError> {
        fn positive(name: &'static str, v: f64) -> Result<(), ConfigError> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(ConfigError { field: name, requirement: "must be positive and finite" })
            }
        }
        positive("grad_tol", self.grad_tol)?;
        if !(self.step_tol >= 0.0 && self.step_tol.is_finite()) {
            return Err(ConfigError { field: "step_tol", requirement: "must be finite and >= 0" });
        }
        if self.max_iter == 0 {
            return Err(ConfigError { field: "max_iter", requirement: "must be at least 1" });
        }
        if !(self.ls_params.growth > 1.0 && self.ls_params.growth.is_finite()) {
            return Err(ConfigError { field: "growth", requirement: "must be finite and > 1" });
        }
        positive("golden_tol", self.ls_params.golden_tol)?;
        if !(self.ls_params.armijo_c1 > 0.0 && self.ls_params.armijo_c1 < 1.0) {
            return Err(ConfigError { field: "armijo_c1", requirement: "must lie in (0, 1)" });
        }
        if !(self.ls_params.backoff > 0.0 && self.ls_params.backoff < 1.0) {
            return Err(ConfigError { field: "backoff", requirement: "must lie in (0, 1)" });
        }
        positive("initial_alpha", self.ls_params.initial_alpha)?;
        positive("lm_lambda0", self.lm_lambda0)?;
        if !(self.lm_increase > 1.0 && self.lm_increase.is_finite()) {
            return Err(ConfigError { field: "lm_increase", requirement: "must be finite and > 1" });
        }
        if !(self.lm_decrease > 0.0 && self.lm_decrease < 1.0) {
            return Err(ConfigError { field: "lm_decrease", requirement: "must lie in (0, 1)" });
        }
        Ok(())
    }
}

/// A configuration field with an unusable value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfigError {
    pub field: &'static str,
    pub requirement: &'static str,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {} {}", self.field, self.requirement)
    }
}

impl core::error::Error for ConfigError {}
