//! Direct O(n) tridiagonal solve (Thomas elimination, no pivoting).

use std::time::{Duration, Instant};

use crate::discretization::TridiagonalSystem;
use crate::error::{Error, Result};

/// Pivots at or below this magnitude are treated as breakdown.
pub const PIVOT_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveStats {
    pub n: usize,
    pub elapsed: Duration,
    /// Smallest `|pivot|` met during elimination.
    pub pivot_min_abs: f64,
}

/// Solves `T x = rhs` with one forward sweep and one back substitution.
///
/// Suitable for diagonally dominant and M-matrix systems; there is no
/// pivoting, and a vanishing pivot is reported as [`Error::SingularPivot`].
pub fn thomas_solve(system: &TridiagonalSystem) -> Result<(Vec<f64>, SolveStats)> {
    let start = Instant::now();
    let n = system.n();
    let (sub, diag, sup, rhs) = (&system.sub, &system.diag, &system.sup, &system.rhs);

    // modified superdiagonal; the solution vector holds the modified rhs
    let mut upper = vec![0.0; n.saturating_sub(1)];
    let mut x = vec![0.0; n];

    let mut pivot = diag[0];
    let mut pivot_min_abs = pivot.abs();
    check_pivot(0, pivot)?;
    x[0] = rhs[0] / pivot;
    if n > 1 {
        upper[0] = sup[0] / pivot;
    }
    for i in 1..n {
        pivot = diag[i] - sub[i - 1] * upper[i - 1];
        check_pivot(i, pivot)?;
        pivot_min_abs = pivot_min_abs.min(pivot.abs());
        if i + 1 < n {
            upper[i] = sup[i] / pivot;
        }
        x[i] = (rhs[i] - sub[i - 1] * x[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        x[i] -= upper[i] * x[i + 1];
    }

    let stats = SolveStats {
        n,
        elapsed: start.elapsed(),
        pivot_min_abs,
    };
    Ok((x, stats))
}

#[inline]
fn check_pivot(row: usize, pivot: f64) -> Result<()> {
    // also rejects NaN
    if pivot.abs() > PIVOT_FLOOR {
        Ok(())
    } else {
        Err(Error::SingularPivot { row, pivot })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_returns_rhs() {
        let r = vec![1.5, -2.0, 3.25, 0.0];
        let s = TridiagonalSystem::new(vec![0.0; 3], vec![1.0; 4], vec![0.0; 3], r.clone()).unwrap();
        let (x, stats) = thomas_solve(&s).unwrap();
        assert_eq!(x, r);
        assert_eq!(stats.n, 4);
        assert_eq!(stats.pivot_min_abs, 1.0);
    }

    #[test]
    fn scalar_system() {
        let s = TridiagonalSystem::new(vec![], vec![8.0], vec![], vec![0.5]).unwrap();
        assert_eq!(thomas_solve(&s).unwrap().0, vec![0.0625]);
    }

    #[test]
    fn three_by_three_with_known_solution() {
        let s = TridiagonalSystem::new(vec![-1.0, -1.0], vec![2.0; 3], vec![-1.0, -1.0], vec![0.0, 0.0, 4.0]).unwrap();
        let (x, stats) = thomas_solve(&s).unwrap();
        for (got, want) in x.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() <= 1e-12);
        }
        assert!(stats.pivot_min_abs > 0.0);
    }

    #[test]
    fn singular_pivot_is_reported() {
        let s = TridiagonalSystem::new(vec![], vec![0.0], vec![], vec![1.0]).unwrap();
        assert!(matches!(thomas_solve(&s), Err(Error::SingularPivot { row: 0, .. })));
        // second pivot is 1 - 1*1 = 0
        let s = TridiagonalSystem::new(vec![1.0], vec![1.0, 1.0], vec![1.0], vec![1.0, 1.0]).unwrap();
        assert!(matches!(thomas_solve(&s), Err(Error::SingularPivot { row: 1, .. })));
    }
}
