//! Iteration histories: what a run did, step by step, and why it stopped.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::config::Method;
use crate::linalg::Vec2;

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    /// Gradient norm fell below `grad_tol`.
    GradToleranceMet,
    /// An accepted step was shorter than `step_tol`.
    StepToleranceMet,
    /// The step budget ran out.
    MaxIterReached,
    /// No acceptable step length was found along the search direction.
    LineSearchFailed,
    /// The Newton system was singular to working precision.
    SingularHessian,
    /// An evaluation produced NaN or an infinity.
    NonFiniteValue,
}

impl Termination {
    pub const ALL: [Termination; 6] = [
        Termination::GradToleranceMet,
        Termination::StepToleranceMet,
        Termination::MaxIterReached,
        Termination::LineSearchFailed,
        Termination::SingularHessian,
        Termination::NonFiniteValue,
    ];

    /// Whether this reason counts as convergence, as opposed to running
    /// out of budget or hitting a numerical dead end.
    pub const fn converged(self) -> bool {
        matches!(self, Termination::GradToleranceMet | Termination::StepToleranceMet)
    }

    pub const fn name(self) -> &'static str {
        match self {
            Termination::GradToleranceMet => "grad_tolerance_met",
            Termination::StepToleranceMet => "step_tolerance_met",
            Termination::MaxIterReached => "max_iter_reached",
            Termination::LineSearchFailed => "line_search_failed",
            Termination::SingularHessian => "singular_hessian",
            Termination::NonFiniteValue => "non_finite_value",
        }
    }

    pub fn from_name(name: &str) -> Option<Termination> {
        Termination::ALL.into_iter().find(|t| t.name() == name)
    }
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Work accounting: objective, gradient, and Hessian evaluations. Counters
/// only ever grow over a run, and they count actual calls — a cached value
/// reused at an unchanged point is not recounted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EvalCounters {
    pub n_f: u64,
    pub n_grad: u64,
    pub n_hess: u64,
}

/// One row of a run's history: the iterate, its value and gradient, and
/// the step (direction and length) taken *from* it.
///
/// The last record of a trace carries a zero direction and `alpha = 0`
/// because no step leaves it. A rejected Levenberg-Marquardt trial also
/// records `alpha = 0` — the refused direction is kept, the point does not
/// move — so consecutive records always satisfy
/// `point[k+1] = point[k] + alpha[k] * direction[k]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    pub k: usize,
    pub point: Vec2,
    pub f_value: f64,
    pub grad: Vec2,
    /// Euclidean norm of `grad`, stored so serialized histories carry it
    /// verbatim.
    pub grad_norm: f64,
    pub direction: Vec2,
    pub alpha: f64,
}

impl IterationRecord {
    /// Build a record, computing `grad_norm` from `grad`. Rejects any
    /// non-finite number: a trace only ever holds points that were actually
    /// reached and values that were actually computed.
    pub fn new(
        k: usize,
        point: Vec2,
        f_value: f64,
        grad: Vec2,
        direction: Vec2,
        alpha: f64,
    ) -> Result<IterationRecord, NonFiniteRecord> {
        Self::from_parts(k, point, f_value, grad, grad.norm(), direction, alpha)
    }

    /// Rebuild a record from stored fields (deserialization path). The
    /// stored `grad_norm` is kept bit-for-bit but must agree with the norm
    /// of `grad` to within `1e-14` relative.
    pub fn from_parts(
        k: usize,
        point: Vec2,
        f_value: f64,
        grad: Vec2,
        grad_norm: f64,
        direction: Vec2,
        alpha: f64,
    ) -> Result<IterationRecord, NonFiniteRecord> {
        let finite = point.is_finite()
            && f_value.is_finite()
            && grad.is_finite()
            && grad_norm.is_finite()
            && direction.is_finite()
            && alpha.is_finite();
        if !finite {
            return Err(NonFiniteRecord);
        }
        let computed = grad.norm();
        if (grad_norm - computed).abs() > 1e-14 * computed.max(1.0) {
            return Err(NonFiniteRecord);
        }
        Ok(IterationRecord {
            k,
            point,
            f_value,
            grad,
            grad_norm,
            direction,
            alpha,
        })
    }
}

/// A record was offered a non-finite number, or a `grad_norm` inconsistent
/// with its gradient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonFiniteRecord;

impl fmt::Display for NonFiniteRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("iteration record fields must be finite and self-consistent")
    }
}

impl core::error::Error for NonFiniteRecord {}

/// The full history of one minimization run.
///
/// Structural invariants (checked by [`Trace::validate`]): records are
/// indexed `0..n` contiguously, the first record sits at `x0`, and every
/// consecutive pair obeys the recorded step algebra
/// `point[k+1] = point[k] + alpha[k] * direction[k]`. `records` is empty
/// only in one corner: a start point whose very first evaluation was
/// non-finite, in which case `termination` is [`Termination::NonFiniteValue`]
/// and there was never a finite value to record.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub function_name: String,
    pub method: Method,
    pub x0: Vec2,
    pub records: Vec<IterationRecord>,
    pub termination: Termination,
    pub counters: EvalCounters,
}

impl Trace {
    /// Steps taken (accepted or rejected), one less than the number of
    /// records.
    pub fn iterations(&self) -> usize {
        self.records.len().saturating_sub(1)
    }

    /// The last record; `None` only for the empty trace of a run whose
    /// very first evaluation was non-finite.
    pub fn final_record(&self) -> Option<&IterationRecord> {
        self.records.last()
    }

    /// The final iterate. An empty trace never moved, so its final
    /// iterate is the start.
    pub fn final_point(&self) -> Vec2 {
        self.final_record().map(|r| r.point).unwrap_or(self.x0)
    }

    /// Check the structural invariants.
    pub fn validate(&self) -> Result<(), TraceError> {
        if self.records.is_empty() {
            return if self.termination == Termination::NonFiniteValue {
                Ok(())
            } else {
                Err(TraceError::Empty)
            };
        }
        if self.records[0].point != self.x0 {
            return Err(TraceError::StartMismatch);
        }
        for (i, rec) in self.records.iter().enumerate() {
            if rec.k != i {
                return Err(TraceError::IndexGap { at: i });
            }
        }
        for pair in self.records.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            let predicted = a.point + a.direction * a.alpha;
            if predicted != b.point {
                return Err(TraceError::StepMismatch { k: a.k });
            }
        }
        let last = self.records.last().expect("checked non-empty above");
        if last.alpha != 0.0 || last.direction != Vec2::ZERO {
            return Err(TraceError::UnterminatedStep);
        }
        Ok(())
    }
}

/// Structural problems [`Trace::validate`] can find.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceError {
    /// No records despite a termination that implies at least one.
    Empty,
    /// The first record is not at `x0`.
    StartMismatch,
    /// Record indices are not `0..n`.
    IndexGap { at: usize },
    /// A consecutive pair does not satisfy the recorded step algebra.
    StepMismatch { k: usize },
    /// The final record claims a step was taken from it.
    UnterminatedStep,
}

impl fmt::Display for TraceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceError::Empty => f.write_str("trace has no records"),
            TraceError::StartMismatch => f.write_str("first record does not sit at x0"),
            TraceError::IndexGap { at } => write!(f, "record index mismatch at position {at}"),
            TraceError::StepMismatch { k } => {
                write!(f, "records {k} and {} do not satisfy the step algebra", k + 1)
            }
            TraceError::UnterminatedStep => f.write_str("final record claims a further step"),
        }
    }
}

impl core::error::Error for TraceError {}
