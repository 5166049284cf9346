//! Finite-difference solvers for the singularly perturbed two-point problem
//!
//! ```text
//! -eps u'' + a(x) u' = f(x) on (0, 1),  u(0), u(1) given,  a(x) >= alpha > 0,
//! ```
//!
//! whose solution develops a boundary layer of width O(eps) at x = 1.
//!
//! The pipeline is: build a [`Mesh1D`] (uniform or Shishkin), [`assemble`]
//! a [`TridiagonalSystem`] with a [`Scheme`], solve it in linear time with
//! [`thomas_solve`], then measure errors and observed orders with the
//! [`analysis`] helpers.
//!
//! ```
//! use layerfd::{refinement_study, MeshSpec, ProblemSpec, Scheme};
//!
//! let problem = ProblemSpec::model(1e-8).unwrap();
//! let report = refinement_study(&problem, &[256, 512], MeshSpec::shishkin(), Scheme::Upwind, None).unwrap();
//! assert!(report.rows[1].max_error < report.rows[0].max_error);
//! ```

pub mod analysis;
pub mod discretization;
pub mod error;
pub mod mesh;
pub mod parallel;
pub mod problem;
pub mod solver;

pub use analysis::{
    epsilon_sweep, fit_uniform_upwind_constant, fitted_shishkin_constant, observed_order, refinement_study,
    refinement_study_with, shishkin_envelope, solve_bvp, solve_bvp_with_stats, uniform_upwind_envelope,
    ConvergenceReport, ConvergenceRow, SolutionGrid,
};
pub use discretization::{assemble, Scheme, TridiagonalSystem};
pub use error::{Error, Result};
pub use mesh::{shishkin_mesh, shishkin_sigma, uniform_mesh, Mesh1D, MeshKind, MeshSpec};
pub use parallel::Execution;
pub use problem::{layer_envelope, reduced_solution, ModelExactSolution, ProblemSpec, ScalarFn};
pub use solver::{thomas_solve, SolveStats, PIVOT_FLOOR};
