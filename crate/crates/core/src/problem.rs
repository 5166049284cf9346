//! The two-point boundary-value problem
//!
//! ```text
//! -eps u'' + a(x) u' = f(x),  0 < x < 1,   u(0) = u_left, u(1) = u_right
//! ```
//!
//! together with the closed-form solution of the model problem (a = 1,
//! f(x) = x, homogeneous boundary values) and the analytic envelopes used
//! for verification.

use std::fmt;
use std::sync::Arc;

use crate::error::{check_epsilon, check_positive, check_unit_interval, Error, Result};

/// A scalar coefficient or source function on [0, 1].
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Number of equispaced samples used to check `a(x) >= alpha` at construction.
const COEFFICIENT_SAMPLES: usize = 257;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Origin {
    Model,
    Custom,
}

/// Problem data. Immutable once built.
#[derive(Clone)]
pub struct ProblemSpec {
    epsilon: f64,
    coeff_a: ScalarFn,
    alpha: f64,
    source_f: ScalarFn,
    u_left: f64,
    u_right: f64,
    origin: Origin,
}

impl ProblemSpec {
    /// The model problem `-eps u'' + u' = x`, `u(0) = u(1) = 0`.
    pub fn model(epsilon: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        Ok(Self {
            epsilon,
            coeff_a: Arc::new(|_| 1.0),
            alpha: 1.0,
            source_f: Arc::new(|x| x),
            u_left: 0.0,
            u_right: 0.0,
            origin: Origin::Model,
        })
    }

    /// A general problem. `coeff_a` is sampled on an equispaced grid and must
    /// stay at or above `alpha > 0`; it is checked again at every mesh node
    /// during assembly.
    pub fn new(
        epsilon: f64,
        coeff_a: ScalarFn,
        alpha: f64,
        source_f: ScalarFn,
        u_left: f64,
        u_right: f64,
    ) -> Result<Self> {
        check_epsilon(epsilon)?;
        check_positive("alpha", alpha)?;
        if !u_left.is_finite() || !u_right.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "boundary values must be finite, got ({u_left}, {u_right})"
            )));
        }
        let spec = Self {
            epsilon,
            coeff_a,
            alpha,
            source_f,
            u_left,
            u_right,
            origin: Origin::Custom,
        };
        let last = (COEFFICIENT_SAMPLES - 1) as f64;
        for k in 0..COEFFICIENT_SAMPLES {
            spec.coefficient_checked(k as f64 / last)?;
        }
        Ok(spec)
    }

    /// Replaces the source term. The result is no longer the model problem.
    pub fn with_source(mut self, source_f: ScalarFn) -> Self {
        self.source_f = source_f;
        self.origin = Origin::Custom;
        self
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn u_left(&self) -> f64 {
        self.u_left
    }

    pub fn u_right(&self) -> f64 {
        self.u_right
    }

    pub fn coeff_a(&self, x: f64) -> f64 {
        (self.coeff_a)(x)
    }

    pub fn source_f(&self, x: f64) -> f64 {
        (self.source_f)(x)
    }

    /// `a(x)`, failing if it violates `a(x) >= alpha`.
    pub fn coefficient_checked(&self, x: f64) -> Result<f64> {
        let value = self.coeff_a(x);
        if value >= self.alpha && value.is_finite() {
            Ok(value)
        } else {
            Err(Error::CoefficientBound {
                x,
                value,
                alpha: self.alpha,
            })
        }
    }

    /// True when this is the model problem built by [`ProblemSpec::model`].
    pub fn is_model(&self) -> bool {
        self.origin == Origin::Model
    }

    /// The closed-form solution, available for the model problem only.
    pub fn exact_solution(&self) -> Option<ModelExactSolution> {
        ModelExactSolution::from_problem(self).ok()
    }
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("epsilon", &self.epsilon)
            .field("alpha", &self.alpha)
            .field("u_left", &self.u_left)
            .field("u_right", &self.u_right)
            .field("model", &self.is_model())
            .finish_non_exhaustive()
    }
}

/// Exact solution of the model problem
///
/// ```text
/// u(x) = x (x/2 + eps) - (1/2 + eps) (e^{(x-1)/eps} - e^{-1/eps}) / (1 - e^{-1/eps})
/// ```
///
/// Both exponents are nonpositive, so tiny `eps` underflows to zero instead
/// of overflowing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelExactSolution {
    epsilon: f64,
}

impl ModelExactSolution {
    pub fn new(epsilon: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        Ok(Self { epsilon })
    }

    pub fn from_problem(problem: &ProblemSpec) -> Result<Self> {
        if !problem.is_model() {
            return Err(Error::InvalidArgument(
                "the closed-form solution only exists for the model problem (a = 1, f = x, zero boundary values)"
                    .into(),
            ));
        }
        Self::new(problem.epsilon())
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        check_unit_interval("x", x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        let eps = self.epsilon;
        let tail = (-1.0 / eps).exp();
        let layer = (((x - 1.0) / eps).exp() - tail) / (1.0 - tail);
        x * (0.5 * x + eps) - (0.5 + eps) * layer
    }
}

/// Solution `x^2 / 2` of the reduced problem `u' = x`, `u(0) = 0`.
pub fn reduced_solution(x: f64) -> Result<f64> {
    check_unit_interval("x", x)?;
    Ok(0.5 * x * x)
}

/// Bound `C eps^{-j} e^{-alpha (1 - x) / eps}` on the j-th derivative of the
/// layer component of the solution.
pub fn layer_envelope(x: f64, epsilon: f64, alpha: f64, deriv_order: u32, c_const: f64) -> Result<f64> {
    check_unit_interval("x", x)?;
    check_positive("epsilon", epsilon)?;
    check_positive("alpha", alpha)?;
    check_positive("c_const", c_const)?;
    let scale = epsilon.powi(-(deriv_order as i32));
    Ok(c_const * scale * (-alpha * (1.0 - x) / epsilon).exp())
}
