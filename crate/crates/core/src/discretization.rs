//! Finite-difference assembly of the interior equations.

use std::fmt;

use crate::error::{Error, Result};
use crate::mesh::{Mesh1D, MeshKind};
use crate::problem::ProblemSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Second-order central differences; uniform meshes only.
    CentralUniform,
    /// Nonuniform three-point diffusion with backward-difference convection.
    Upwind,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::CentralUniform => "central",
            Scheme::Upwind => "upwind",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Tridiagonal system for the `n = N - 1` interior unknowns.
///
/// Row `i` reads `sub[i-1] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>, rhs: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty tridiagonal system".into()));
        }
        for (len, expected) in [(sub.len(), n - 1), (sup.len(), n - 1), (rhs.len(), n)] {
            if len != expected {
                return Err(Error::LengthMismatch { expected, found: len });
            }
        }
        let system = Self { sub, diag, sup, rhs };
        if !system.is_finite() {
            return Err(Error::InvalidArgument("tridiagonal system has non-finite entries".into()));
        }
        Ok(system)
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    fn is_finite(&self) -> bool {
        [&self.sub, &self.diag, &self.sup, &self.rhs]
            .iter()
            .all(|v| v.iter().all(|x| x.is_finite()))
    }

    /// Off-diagonal entries of row `i` as `(lower, upper)`, zero where absent.
    pub fn off_diagonals(&self, i: usize) -> (f64, f64) {
        let lower = if i > 0 { self.sub[i - 1] } else { 0.0 };
        let upper = self.sup.get(i).copied().unwrap_or(0.0);
        (lower, upper)
    }

    /// `max_i |(T x - rhs)_i|`, by explicit row-wise multiplication.
    pub fn residual_max_norm(&self, candidate: &[f64]) -> Result<f64> {
        let n = self.n();
        if candidate.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: candidate.len(),
            });
        }
        let mut worst = 0.0f64;
        for i in 0..n {
            let mut row = self.diag[i] * candidate[i] - self.rhs[i];
            if i > 0 {
                row += self.sub[i - 1] * candidate[i - 1];
            }
            if i + 1 < n {
                row += self.sup[i] * candidate[i + 1];
            }
            worst = worst.max(row.abs());
        }
        Ok(worst)
    }

    /// Dense row-major copy, for small verification problems.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut row = vec![0.0; n];
                row[i] = self.diag[i];
                if i > 0 {
                    row[i - 1] = self.sub[i - 1];
                }
                if i + 1 < n {
                    row[i + 1] = self.sup[i];
                }
                row
            })
            .collect()
    }
}

/// Stencil coefficients `(lower, centre, upper)` for one interior node.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Row {
    lower: f64,
    centre: f64,
    upper: f64,
}

fn central_row(eps: f64, a: f64, h: f64) -> Row {
    let diffusion = eps / (h * h);
    let convection = a / (2.0 * h);
    Row {
        lower: -diffusion - convection,
        centre: 2.0 * diffusion,
        upper: -diffusion + convection,
    }
}

fn upwind_row(eps: f64, a: f64, h_left: f64, h_right: f64) -> Row {
    let span = h_left + h_right;
    let convection = a / h_left;
    Row {
        lower: -(2.0 * eps / (h_left * span)) - convection,
        centre: 2.0 * eps / (h_left * h_right) + convection,
        upper: -(2.0 * eps / (h_right * span)),
    }
}

/// Assembles `-eps u'' + a u' = f` at every interior node of `mesh`, moving
/// the Dirichlet values into the first and last right-hand sides.
///
/// Rows are in unscaled operator form, so `rhs[i] = f(x_{i+1})` away from
/// the boundary.
pub fn assemble(problem: &ProblemSpec, mesh: &Mesh1D, scheme: Scheme) -> Result<TridiagonalSystem> {
    if scheme == Scheme::CentralUniform && mesh.kind() != MeshKind::Uniform {
        return Err(Error::SchemeMeshMismatch {
            scheme: scheme.name(),
            mesh: mesh.kind().name(),
        });
    }
    let x = mesh.points();
    let n_intervals = mesh.n_intervals();
    let n = n_intervals - 1;
    let eps = problem.epsilon();
    let uniform_step = 1.0 / n_intervals as f64;

    let mut sub = Vec::with_capacity(n.saturating_sub(1));
    let mut diag = Vec::with_capacity(n);
    let mut sup = Vec::with_capacity(n.saturating_sub(1));
    let mut rhs = Vec::with_capacity(n);

    for i in 1..n_intervals {
        let a = problem.coefficient_checked(x[i])?;
        let row = match scheme {
            Scheme::CentralUniform => central_row(eps, a, uniform_step),
            Scheme::Upwind => upwind_row(eps, a, x[i] - x[i - 1], x[i + 1] - x[i]),
        };
        let mut b = problem.source_f(x[i]);
        if i == 1 {
            b -= row.lower * problem.u_left();
        } else {
            sub.push(row.lower);
        }
        if i == n_intervals - 1 {
            b -= row.upper * problem.u_right();
        } else {
            sup.push(row.upper);
        }
        diag.push(row.centre);
        rhs.push(b);
    }

    TridiagonalSystem::new(sub, diag, sup, rhs)
}
