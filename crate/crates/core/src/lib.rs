//! Two-dimensional unconstrained minimization with gradient-based methods.
//!
//! Everything in this crate is specialized to the plane: points and
//! gradients are [`Vec2`], Hessians are [`Mat2`], and the only linear solve
//! anywhere is a closed-form 2x2 elimination. That specialization keeps the
//! methods easy to read next to their textbook forms and makes every run
//! cheap enough to sweep over hundreds of starting points.
//!
//! The pieces:
//!
//! * [`linalg`] — `Vec2`, `Mat2`, the pivoted 2x2 solve, and rectangles.
//! * [`objectives`] — four classic benchmark surfaces (Rosenbrock, a
//!   two-spring equilibrium problem, a slow-decay Ackley, Himmelblau) with
//!   analytic gradients and Hessians, plus a central finite-difference
//!   oracle for checking them.
//! * [`linesearch`] — bracketing, golden-section, and backtracking-Armijo
//!   step-length rules.
//! * [`optimizers`] — steepest descent, both conjugate-gradient flavors,
//!   Newton, DFP/BFGS quasi-Newton, and a damped Levenberg-Marquardt step,
//!   all driven by one [`minimize`] loop that records a full [`Trace`].
//! * [`bench`] — named benchmark cases, error series, start-point
//!   sensitivity sweeps, and brute-force grid oracles.
//!
//! The crate is `no_std` (with `alloc`), so the numerical core carries no
//! platform dependencies; file formats, plotting, and the command line live
//! in the companion `gradbench` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bench;
pub mod config;
pub mod linalg;
pub mod linesearch;
pub mod objectives;
pub mod optimizers;
pub mod trace;

pub use config::{LineSearchKind, LineSearchParams, Method, OptimizerConfig};
pub use linalg::{solve2x2, Mat2, Rect, SolveError, Vec2};
pub use objectives::{Objective, ObjectiveFunction};
pub use optimizers::minimize;
pub use trace::{EvalCounters, IterationRecord, Termination, Trace};
