//! Uniform and Shishkin partitions of [0, 1].

use std::fmt;

use crate::error::{check_epsilon, check_positive, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeshKind {
    Uniform,
    Shishkin,
}

impl MeshKind {
    pub fn name(self) -> &'static str {
        match self {
            MeshKind::Uniform => "uniform",
            MeshKind::Shishkin => "shishkin",
        }
    }
}

impl fmt::Display for MeshKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Strictly increasing grid `0 = x_0 < x_1 < ... < x_N = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh1D {
    points: Vec<f64>,
    kind: MeshKind,
    transition: Option<f64>,
    sigma: Option<f64>,
}

impl Mesh1D {
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn kind(&self) -> MeshKind {
        self.kind
    }

    /// Number of subintervals N.
    pub fn n_intervals(&self) -> usize {
        self.points.len() - 1
    }

    /// The transition point `1 - sigma` of a Shishkin mesh.
    pub fn transition(&self) -> Option<f64> {
        self.transition
    }

    pub fn sigma(&self) -> Option<f64> {
        self.sigma
    }

    /// `h_i = x_{i+1} - x_i` for `i = 0..N`.
    pub fn interval_widths(&self) -> Vec<f64> {
        self.points.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// `x_i = i / N`.
pub fn uniform_mesh(n_intervals: usize) -> Result<Mesh1D> {
    if n_intervals < 2 {
        return Err(Error::InvalidArgument(format!(
            "a uniform mesh needs at least 2 intervals, got {n_intervals}"
        )));
    }
    let n = n_intervals as f64;
    let points = (0..=n_intervals).map(|i| i as f64 / n).collect();
    Ok(Mesh1D {
        points,
        kind: MeshKind::Uniform,
        transition: None,
        sigma: None,
    })
}

/// Transition parameter `sigma = min(1/2, (sigma0 / alpha) eps ln N)`.
pub fn shishkin_sigma(n_intervals: usize, epsilon: f64, alpha: f64, sigma0: f64) -> f64 {
    (sigma0 / alpha * epsilon * (n_intervals as f64).ln()).min(0.5)
}

/// Piecewise-equidistant mesh with N/2 intervals on `[0, 1 - sigma]` and N/2
/// on `[1 - sigma, 1]`, refined towards the layer at x = 1.
///
/// Each half is interpolated from its own endpoints so that `x_{N/2}` is
/// exactly `1 - sigma`. When sigma clamps to 1/2 the mesh is uniform.
pub fn shishkin_mesh(n_intervals: usize, epsilon: f64, alpha: f64, sigma0: f64) -> Result<Mesh1D> {
    if n_intervals < 4 || !n_intervals.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "a Shishkin mesh needs an even number of intervals >= 4, got {n_intervals}"
        )));
    }
    check_epsilon(epsilon)?;
    check_positive("alpha", alpha)?;
    check_positive("sigma0", sigma0)?;

    let sigma = shishkin_sigma(n_intervals, epsilon, alpha, sigma0);
    let transition = 1.0 - sigma;
    let half = n_intervals / 2;
    let m = half as f64;

    let mut points = Vec::with_capacity(n_intervals + 1);
    points.extend((0..half).map(|i| transition * (i as f64 / m)));
    points.push(transition);
    points.extend((1..half).map(|j| 1.0 - sigma * ((half - j) as f64 / m)));
    points.push(1.0);

    let mesh = Mesh1D {
        points,
        kind: MeshKind::Shishkin,
        transition: Some(transition),
        sigma: Some(sigma),
    };
    // a fine width below the spacing of doubles near 1 cannot be represented
    if mesh.points.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(format!(
            "Shishkin fine width {:e} is not representable near x = 1 (eps = {epsilon:e}, N = {n_intervals})",
            sigma / m
        )));
    }
    Ok(mesh)
}

/// How to build a mesh for a given N and eps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeshSpec {
    Uniform,
    Shishkin { alpha: f64, sigma0: f64 },
}

impl MeshSpec {
    /// Shishkin mesh with `alpha = 1`, `sigma0 = 2`.
    pub fn shishkin() -> Self {
        MeshSpec::Shishkin {
            alpha: 1.0,
            sigma0: 2.0,
        }
    }

    pub fn kind(&self) -> MeshKind {
        match self {
            MeshSpec::Uniform => MeshKind::Uniform,
            MeshSpec::Shishkin { .. } => MeshKind::Shishkin,
        }
    }

    pub fn build(&self, n_intervals: usize, epsilon: f64) -> Result<Mesh1D> {
        match *self {
            MeshSpec::Uniform => uniform_mesh(n_intervals),
            MeshSpec::Shishkin { alpha, sigma0 } => shishkin_mesh(n_intervals, epsilon, alpha, sigma0),
        }
    }
}
