//! Checks of the solver pipeline against independent oracles.

use layerfd::{
    assemble, shishkin_mesh, solve_bvp, thomas_solve, uniform_mesh, ProblemSpec, Scheme, TridiagonalSystem,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense Gaussian elimination with partial pivoting.
fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            let (upper, lower) = a.split_at_mut(row);
            for (target, source) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *target -= factor * source;
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    x
}

fn random_dominant_system(rng: &mut impl Rng, n: usize) -> TridiagonalSystem {
    let sub: Vec<f64> = (0..n.saturating_sub(1)).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let sup: Vec<f64> = (0..n.saturating_sub(1)).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let diag = (0..n)
        .map(|i| {
            let lower = if i > 0 { sub[i - 1].abs() } else { 0.0 };
            let upper = sup.get(i).map_or(0.0, |u| u.abs());
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            sign * (lower + upper + rng.gen_range(0.1..2.0))
        })
        .collect();
    let rhs = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
    TridiagonalSystem::new(sub, diag, sup, rhs).unwrap()
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

#[test]
fn thomas_agrees_with_dense_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let n = rng.gen_range(1..=64);
        let system = random_dominant_system(&mut rng, n);
        let (x, stats) = thomas_solve(&system).unwrap();
        let reference = dense_solve(system.to_dense(), system.rhs.clone());
        let diff: Vec<f64> = x.iter().zip(&reference).map(|(a, b)| a - b).collect();
        assert!(max_norm(&diff) <= 1e-9 * max_norm(&reference).max(f64::MIN_POSITIVE));
        assert!(stats.pivot_min_abs > 0.0);
        assert_eq!(stats.n, n);
    }
}

#[test]
fn thomas_agrees_with_dense_elimination_on_assembled_systems() {
    for eps in [1.0, 1e-2, 1e-4] {
        let p = ProblemSpec::model(eps).unwrap();
        for (mesh, scheme) in [
            (uniform_mesh(40).unwrap(), Scheme::CentralUniform),
            (uniform_mesh(40).unwrap(), Scheme::Upwind),
            (shishkin_mesh(40, eps, 1.0, 2.0).unwrap(), Scheme::Upwind),
        ] {
            let system = assemble(&p, &mesh, scheme).unwrap();
            let (x, _) = thomas_solve(&system).unwrap();
            let reference = dense_solve(system.to_dense(), system.rhs.clone());
            let diff: Vec<f64> = x.iter().zip(&reference).map(|(a, b)| a - b).collect();
            assert!(max_norm(&diff) <= 1e-9 * max_norm(&reference), "eps={eps} {scheme}");
        }
    }
}

#[test]
fn upwind_solution_obeys_the_discrete_maximum_principle() {
    for eps in [1.0, 1e-2, 1e-4, 1e-6, 1e-8] {
        let p = ProblemSpec::model(eps).unwrap();
        for mesh in [
            uniform_mesh(256).unwrap(),
            uniform_mesh(4096).unwrap(),
            shishkin_mesh(256, eps, 1.0, 2.0).unwrap(),
            shishkin_mesh(4096, eps, 1.0, 2.0).unwrap(),
        ] {
            let grid = solve_bvp(&p, &mesh, Scheme::Upwind).unwrap();
            assert!(grid.u_numeric().iter().all(|&u| u >= -1e-12), "eps={eps}");
        }
    }
}

#[test]
fn central_oscillates_where_upwind_shishkin_is_monotone() {
    let eps = 1e-6;
    let p = ProblemSpec::model(eps).unwrap();

    let central = solve_bvp(&p, &uniform_mesh(256).unwrap(), Scheme::CentralUniform).unwrap();
    let tail = &central.u_numeric()[central.u_numeric().len() - 10..];
    let steps: Vec<f64> = tail.windows(2).map(|w| w[1] - w[0]).collect();
    assert!(steps.windows(2).any(|s| s[0] * s[1] < 0.0));

    let upwind = solve_bvp(&p, &shishkin_mesh(256, eps, 1.0, 2.0).unwrap(), Scheme::Upwind).unwrap();
    let u = upwind.u_numeric();
    let peak = (0..u.len()).max_by(|&i, &j| u[i].total_cmp(&u[j])).unwrap();
    assert!(peak > 0 && peak < u.len() - 1);
    assert!(u[..=peak].windows(2).all(|w| w[1] >= w[0]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn thomas_residual_is_small(seed in any::<u64>(), n in 1usize..200) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let system = random_dominant_system(&mut rng, n);
        let (x, _) = thomas_solve(&system).unwrap();
        let scale = max_norm(&system.rhs).max(1.0);
        prop_assert!(system.residual_max_norm(&x).unwrap() <= 1e-10 * scale);
    }

    #[test]
    fn assembled_upwind_systems_are_m_matrices(log_eps in -8.0f64..0.0, half in 2usize..600) {
        let eps = 10f64.powf(log_eps);
        let p = ProblemSpec::model(eps).unwrap();
        let mesh = shishkin_mesh(2 * half, eps, 1.0, 2.0).unwrap();
        let s = assemble(&p, &mesh, Scheme::Upwind).unwrap();
        for i in 0..s.n() {
            let (lower, upper) = s.off_diagonals(i);
            prop_assert!(s.diag[i] > 0.0 && lower <= 0.0 && upper <= 0.0);
            prop_assert!(s.diag[i] >= (lower.abs() + upper.abs()) * (1.0 - 1e-14));
        }
        // entries scale like 1/h_fine, so measure the residual against |T| |x|
        let (x, _) = thomas_solve(&s).unwrap();
        let row_norm = (0..s.n())
            .map(|i| { let (l, u) = s.off_diagonals(i); s.diag[i].abs() + l.abs() + u.abs() })
            .fold(0.0, f64::max);
        let scale = row_norm * max_norm(&x) + max_norm(&s.rhs);
        prop_assert!(s.residual_max_norm(&x).unwrap() <= 1e-12 * scale);
    }
}
