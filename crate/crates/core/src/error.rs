use thiserror::Error;

/// Errors produced while building, assembling or solving a problem.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{name} = {value} is outside its admissible range ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The central scheme was requested on a mesh that is not uniform.
    #[error("scheme {scheme} cannot be assembled on a {mesh} mesh")]
    SchemeMeshMismatch {
        scheme: &'static str,
        mesh: &'static str,
    },

    /// The convection coefficient dropped below its declared lower bound.
    #[error("convection coefficient a({x}) = {value} is below the lower bound alpha = {alpha}")]
    CoefficientBound { x: f64, value: f64, alpha: f64 },

    #[error("elimination pivot {pivot:e} at row {row} is too small; the system is degenerate")]
    SingularPivot { row: usize, pivot: f64 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("no exact solution is attached to this solution grid")]
    MissingExactSolution,

    #[error("errors must be positive to compute an order, got ({coarse}, {fine})")]
    NonPositiveError { coarse: f64, fine: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit_interval(name: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: x,
            expected: "0 <= x <= 1",
        })
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            expected: "finite and > 0",
        })
    }
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "epsilon",
            value: epsilon,
            expected: "0 < epsilon <= 1",
        })
    }
}
