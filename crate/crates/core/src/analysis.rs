//! Error measurement, observed orders, bound envelopes and refinement studies.

use crate::discretization::{assemble, Scheme};
use crate::error::{check_positive, check_unit_interval, Error, Result};
use crate::mesh::{Mesh1D, MeshKind, MeshSpec};
use crate::parallel::{try_map, Execution};
use crate::problem::ProblemSpec;
use crate::solver::{thomas_solve, SolveStats};

/// Nodal values of a discrete solution, boundary values included.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionGrid {
    mesh: Mesh1D,
    u_numeric: Vec<f64>,
    u_exact: Option<Vec<f64>>,
}

impl SolutionGrid {
    pub fn new(mesh: Mesh1D, u_numeric: Vec<f64>, u_exact: Option<Vec<f64>>) -> Result<Self> {
        let expected = mesh.points().len();
        for len in std::iter::once(u_numeric.len()).chain(u_exact.as_ref().map(Vec::len)) {
            if len != expected {
                return Err(Error::LengthMismatch { expected, found: len });
            }
        }
        Ok(Self {
            mesh,
            u_numeric,
            u_exact,
        })
    }

    pub fn mesh(&self) -> &Mesh1D {
        &self.mesh
    }

    pub fn points(&self) -> &[f64] {
        self.mesh.points()
    }

    pub fn u_numeric(&self) -> &[f64] {
        &self.u_numeric
    }

    pub fn u_exact(&self) -> Option<&[f64]> {
        self.u_exact.as_deref()
    }

    /// `|u_numeric_i - u_exact_i|` at every node.
    pub fn pointwise_errors(&self) -> Result<Vec<f64>> {
        let exact = self.u_exact.as_ref().ok_or(Error::MissingExactSolution)?;
        Ok(self.u_numeric.iter().zip(exact).map(|(u, e)| (u - e).abs()).collect())
    }

    /// Discrete maximum-norm error over all nodes.
    pub fn max_norm_error(&self) -> Result<f64> {
        Ok(self.pointwise_errors()?.into_iter().fold(0.0, f64::max))
    }
}

/// Rate `log2(e_coarse / e_fine)` between a mesh and its doubling.
pub fn observed_order(error_coarse: f64, error_fine: f64) -> Result<f64> {
    if !(error_coarse > 0.0 && error_fine > 0.0) {
        return Err(Error::NonPositiveError {
            coarse: error_coarse,
            fine: error_fine,
        });
    }
    Ok((error_coarse / error_fine).log2())
}

/// Uniform-mesh upwind bound `C (h + exp(-alpha (1 - x_i) / (alpha h + 2 eps)))`.
pub fn uniform_upwind_envelope(x_i: f64, h: f64, epsilon: f64, alpha: f64, c_const: f64) -> Result<f64> {
    check_unit_interval("x_i", x_i)?;
    check_positive("h", h)?;
    check_positive("epsilon", epsilon)?;
    check_positive("alpha", alpha)?;
    check_positive("c_const", c_const)?;
    Ok(c_const * (h + (-alpha * (1.0 - x_i) / (alpha * h + 2.0 * epsilon)).exp()))
}

/// Shishkin-mesh upwind bound `C ln(N) / N`.
pub fn shishkin_envelope(n_intervals: usize, c_const: f64) -> Result<f64> {
    if n_intervals < 2 {
        return Err(Error::InvalidArgument(format!(
            "the Shishkin bound needs N >= 2, got {n_intervals}"
        )));
    }
    check_positive("c_const", c_const)?;
    let n = n_intervals as f64;
    Ok(c_const * n.ln() / n)
}

/// The constant `C` for which `error = C ln(N) / N`.
pub fn fitted_shishkin_constant(n_intervals: usize, max_error: f64) -> Result<f64> {
    Ok(max_error / shishkin_envelope(n_intervals, 1.0)?)
}

/// Smallest `C` with `|error_i| <= uniform_upwind_envelope(x_i, h, eps, alpha, C)`
/// at every node `x_i <= x_max` of a uniform-mesh solution.
pub fn fit_uniform_upwind_constant(grid: &SolutionGrid, epsilon: f64, alpha: f64, x_max: f64) -> Result<f64> {
    if grid.mesh().kind() != MeshKind::Uniform {
        return Err(Error::InvalidArgument("the uniform-mesh bound needs a uniform mesh".into()));
    }
    let h = 1.0 / grid.mesh().n_intervals() as f64;
    let errors = grid.pointwise_errors()?;
    let mut c = 0.0f64;
    for (&x, err) in grid.points().iter().zip(errors) {
        if x <= x_max {
            c = c.max(err / uniform_upwind_envelope(x, h, epsilon, alpha, 1.0)?);
        }
    }
    Ok(c)
}

/// Assembles, solves and reattaches boundary values. The exact solution is
/// sampled at the nodes when the problem is the model problem.
pub fn solve_bvp(problem: &ProblemSpec, mesh: &Mesh1D, scheme: Scheme) -> Result<SolutionGrid> {
    solve_bvp_with_stats(problem, mesh, scheme).map(|(grid, _)| grid)
}

pub fn solve_bvp_with_stats(problem: &ProblemSpec, mesh: &Mesh1D, scheme: Scheme) -> Result<(SolutionGrid, SolveStats)> {
    let system = assemble(problem, mesh, scheme)?;
    let (interior, stats) = thomas_solve(&system)?;

    let mut u_numeric = Vec::with_capacity(interior.len() + 2);
    u_numeric.push(problem.u_left());
    u_numeric.extend_from_slice(&interior);
    u_numeric.push(problem.u_right());

    let u_exact = problem
        .exact_solution()
        .map(|exact| mesh.points().iter().map(|&x| exact.eval_unchecked(x)).collect());
    let grid = SolutionGrid::new(mesh.clone(), u_numeric, u_exact)?;
    Ok((grid, stats))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n_intervals: usize,
    pub max_error: f64,
    /// Rate against the previous row, present only when N doubled.
    pub observed_order: Option<f64>,
    pub theory_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    pub scheme: Scheme,
    pub mesh_kind: MeshKind,
    pub epsilon: f64,
}

impl ConvergenceReport {
    pub fn errors(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.max_error).collect()
    }

    /// `(N, order)` for every row that carries an order.
    pub fn orders(&self) -> Vec<(usize, f64)> {
        self.rows
            .iter()
            .filter_map(|r| r.observed_order.map(|p| (r.n_intervals, p)))
            .collect()
    }
}

fn check_levels(n_list: &[usize]) -> Result<()> {
    if n_list.is_empty() {
        return Err(Error::InvalidArgument("the list of mesh sizes is empty".into()));
    }
    if n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(format!(
            "mesh sizes must be strictly increasing, got {n_list:?}"
        )));
    }
    Ok(())
}

fn max_error_at(problem: &ProblemSpec, n_intervals: usize, mesh: MeshSpec, scheme: Scheme) -> Result<f64> {
    let mesh = mesh.build(n_intervals, problem.epsilon())?;
    solve_bvp(problem, &mesh, scheme)?.max_norm_error()
}

fn build_report(
    n_list: &[usize],
    errors: Vec<f64>,
    epsilon: f64,
    mesh: MeshSpec,
    scheme: Scheme,
    envelope_constant: Option<f64>,
) -> Result<ConvergenceReport> {
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(n_list.len());
    for (&n_intervals, max_error) in n_list.iter().zip(errors) {
        let observed_order = match rows.last() {
            // zero errors (exact reproduction) have no defined rate
            Some(prev) if n_intervals == 2 * prev.n_intervals => observed_order(prev.max_error, max_error).ok(),
            _ => None,
        };
        let theory_bound = match (mesh.kind(), envelope_constant) {
            (MeshKind::Shishkin, Some(c)) => Some(shishkin_envelope(n_intervals, c)?),
            _ => None,
        };
        rows.push(ConvergenceRow {
            n_intervals,
            max_error,
            observed_order,
            theory_bound,
        });
    }
    Ok(ConvergenceReport {
        rows,
        scheme,
        mesh_kind: mesh.kind(),
        epsilon,
    })
}

/// Solves on every mesh size in `n_list` and tabulates the max-norm errors,
/// the observed orders between doubled levels, and optionally the
/// `C ln(N) / N` bound for Shishkin meshes. Levels run concurrently; any
/// failure aborts the whole study.
pub fn refinement_study(
    problem: &ProblemSpec,
    n_list: &[usize],
    mesh: MeshSpec,
    scheme: Scheme,
    envelope_constant: Option<f64>,
) -> Result<ConvergenceReport> {
    refinement_study_with(problem, n_list, mesh, scheme, envelope_constant, Execution::default())
}

pub fn refinement_study_with(
    problem: &ProblemSpec,
    n_list: &[usize],
    mesh: MeshSpec,
    scheme: Scheme,
    envelope_constant: Option<f64>,
    execution: Execution,
) -> Result<ConvergenceReport> {
    check_levels(n_list)?;
    if let Some(c) = envelope_constant {
        check_positive("envelope_constant", c)?;
    }
    if !problem.is_model() {
        return Err(Error::MissingExactSolution);
    }
    let errors = try_map(n_list, execution, |&n| max_error_at(problem, n, mesh, scheme))?;
    build_report(n_list, errors, problem.epsilon(), mesh, scheme, envelope_constant)
}

/// Refinement studies of the model problem for several values of eps, with
/// every (eps, N) cell evaluated as an independent work item.
pub fn epsilon_sweep(
    epsilons: &[f64],
    n_list: &[usize],
    mesh: MeshSpec,
    scheme: Scheme,
    envelope_constant: Option<f64>,
    execution: Execution,
) -> Result<Vec<ConvergenceReport>> {
    check_levels(n_list)?;
    if epsilons.is_empty() {
        return Err(Error::InvalidArgument("the list of eps values is empty".into()));
    }
    if let Some(c) = envelope_constant {
        check_positive("envelope_constant", c)?;
    }
    let problems = epsilons
        .iter()
        .map(|&eps| ProblemSpec::model(eps))
        .collect::<Result<Vec<_>>>()?;
    let cells: Vec<(usize, usize)> = (0..problems.len())
        .flat_map(|p| n_list.iter().map(move |&n| (p, n)))
        .collect();
    let errors = try_map(&cells, execution, |&(p, n)| max_error_at(&problems[p], n, mesh, scheme))?;
    errors
        .chunks(n_list.len())
        .zip(epsilons)
        .map(|(row, &eps)| build_report(n_list, row.to_vec(), eps, mesh, scheme, envelope_constant))
        .collect()
}
