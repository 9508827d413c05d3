use std::f64::consts::PI;

use proptest::prelude::*;
use subdiv_mg::problems::{
    biharmonic_problem, cardinal_bspline, iga_laplacian_problem, iga_matrix, iga_stencil_symbol,
    iga_symbol, iga_symbol_truncated, intervals_for_dim,
};
use subdiv_mg::{BSplineBasis, Dense, Operator};

type Basis = BSplineBasis<f64>;

// Marsden coefficients of x²: c_j = 2/(μ(μ-1)) Σ_{a<b} t_{j+a} t_{j+b}, a, b ∈ 1..=μ
fn marsden_square(basis: &Basis) -> Vec<f64> {
    let mu = basis.degree();
    let t = basis.knots();
    (0..basis.num_basis())
        .map(|j| {
            let mut s = 0.0;
            for a in 1..=mu {
                for b in a + 1..=mu {
                    s += t[j + a] * t[j + b];
                }
            }
            2.0 * s / (mu * (mu - 1)) as f64
        })
        .collect()
}

#[test]
fn partition_of_unity_and_support() {
    for mu in 1..=16 {
        let basis = Basis::uniform(11, mu).unwrap();
        for k in 0..=1000 {
            let x = k as f64 / 1000.0;
            let v = basis.eval_all(x, 0);
            assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12, "μ={mu} x={x}");
            for (j, b) in v.iter().enumerate() {
                assert!(*b >= -1e-15);
                let (lo, hi) = basis.support(j);
                if x < lo || x > hi {
                    assert_eq!(*b, 0.0);
                }
            }
        }
    }
}

#[test]
fn derivatives_of_partition_vanish() {
    for mu in 2..=10 {
        let basis = Basis::uniform(9, mu).unwrap();
        for k in 1..50 {
            let x = k as f64 / 50.0;
            for d in 1..=2 {
                assert!(
                    basis.eval_all(x, d).iter().sum::<f64>().abs() < 1e-8,
                    "μ={mu} d={d}"
                );
            }
        }
    }
}

#[test]
fn quadratic_reproduction() {
    for mu in [3usize, 4, 6, 10] {
        let basis = Basis::uniform(13, mu).unwrap();
        let c = marsden_square(&basis);
        for k in 1..=20 {
            let x = k as f64 / 21.0;
            let value: f64 = basis
                .eval_all(x, 0)
                .iter()
                .zip(&c)
                .map(|(b, c)| b * c)
                .sum();
            let second: f64 = basis
                .eval_all(x, 2)
                .iter()
                .zip(&c)
                .map(|(b, c)| b * c)
                .sum();
            assert!((value - x * x).abs() < 1e-12, "μ={mu}");
            let tol = if mu == 3 { 1e-9 } else { 1e-6 };
            assert!((second - 2.0).abs() < tol, "μ={mu}: {second}");
        }
    }
}

#[test]
fn cardinal_bspline_matches_uniform_interior_basis() {
    for mu in 2..=8 {
        let nu = 3 * mu + 4;
        let basis = Basis::uniform(nu, mu).unwrap();
        // basis function j = μ starts at knot 0 on the uniform interior
        for k in 0..=40 {
            let s = k as f64 / 40.0 * (mu + 1) as f64;
            let x = s / nu as f64;
            let got = basis.eval(mu, x, 0).unwrap();
            assert!(
                (got - cardinal_bspline(mu, s)).abs() < 1e-12,
                "μ={mu} s={s}"
            );
        }
    }
}

#[test]
fn collocation_row_sums_equal_dropped_columns() {
    for (nu, mu) in [(10, 3), (20, 5), (30, 10), (40, 16)] {
        let basis = Basis::uniform(nu, mu).unwrap();
        let tau = basis.greville();
        let a = iga_matrix::<f64>(nu, mu).unwrap();
        let n = a.dim();
        let ones = a.matvec(&vec![1.0; n]).unwrap();
        for (r, s) in ones.iter().enumerate() {
            let d2 = basis.eval_all(tau[r + 1], 2);
            let scale = d2.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            assert!(
                (s - (d2[0] + d2[n + 1])).abs() < 1e-9 * scale,
                "ν={nu} μ={mu} r={r}"
            );
        }
    }
}

#[test]
fn collocation_bandwidth() {
    for (nu, mu) in [(12, 3), (20, 10), (30, 16)] {
        let a = iga_matrix::<f64>(nu, mu).unwrap();
        assert!(
            a.lower() <= mu && a.upper() <= mu,
            "{} {}",
            a.lower(),
            a.upper()
        );
    }
}

#[test]
fn collocation_symmetric_part_is_positive_definite() {
    for mu in [3usize, 4, 10, 16] {
        for n in [15usize, 31, 63, 127] {
            let Ok(nu) = intervals_for_dim(n, mu) else {
                continue;
            };
            let a = iga_matrix::<f64>(nu, mu).unwrap().to_dense();
            let at = a.transpose();
            let sym = Dense::from_fn(n, n, |i, j| 0.5 * (a.get(i, j) + at.get(i, j)));
            let (eigs, _) = sym.symmetric_eigen().unwrap();
            let min = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(min > 0.0, "μ={mu} n={n}: {min}");
        }
    }
}

#[test]
fn collocation_interior_matches_stencil() {
    for mu in [3usize, 6, 10] {
        let nu = 40;
        let a = iga_matrix::<f64>(nu, mu).unwrap();
        let stencil = iga_stencil_symbol::<f64>(mu).unwrap();
        let scale = (nu * nu) as f64;
        let r = a.dim() / 2;
        for k in -(stencil.degree() as i64)..=stencil.degree() as i64 {
            let c = (r as i64 + k) as usize;
            assert!(
                (a.get(r, c) - scale * stencil.coefficient(k)).abs() < 1e-8 * scale,
                "μ={mu} k={k}"
            );
        }
    }
}

#[test]
fn iga_problem_dimensions() {
    for mu in [3usize, 10, 16] {
        let nu = intervals_for_dim(511, mu).unwrap();
        let prob = iga_laplacian_problem::<f64>(nu, mu).unwrap();
        assert_eq!(prob.a.dim(), 511);
        assert!(!prob.a.is_symmetric(1e-12) || mu == 3);
        let r = prob.a.residual(&prob.b, &prob.x_exact).unwrap();
        assert!(r.iter().all(|v| v.abs() < 1e-6));
    }
    assert!(intervals_for_dim(5, 16).is_err());
}

#[test]
fn iga_symbol_agrees_with_stencil_symbol() {
    for (mu, tol) in [(10usize, 1e-10), (16, 1e-12)] {
        let stencil = iga_stencil_symbol::<f64>(mu).unwrap();
        for k in 0..=64 {
            let x = PI * k as f64 / 64.0;
            let a = stencil.eval(x);
            let b = iga_symbol(mu, x).unwrap();
            assert!((a - b).abs() < tol, "μ={mu} x={x}: {a} vs {b}");
            let coarse = iga_symbol_truncated(mu, x, 50).unwrap();
            let fine = iga_symbol_truncated(mu, x, 100).unwrap();
            assert!((coarse - fine).abs() < 1e-10);
        }
    }
    // the μ = 3 tail decays only like α^{-2}
    let s3 = iga_stencil_symbol::<f64>(3).unwrap();
    assert!((s3.eval(1.0) - iga_symbol(3, 1.0).unwrap()).abs() < 1e-3);
}

#[test]
fn iga_symbol_flattens_near_pi_as_degree_grows() {
    let ratio = |mu: usize| {
        let values: Vec<f64> = (0..=512)
            .map(|k| iga_symbol(mu, PI * k as f64 / 512.0).unwrap())
            .collect();
        let max = values.iter().cloned().fold(0.0, f64::max);
        values[512] / max
    };
    let (r3, r10, r16) = (ratio(3), ratio(10), ratio(16));
    assert!((r3 - 1.0).abs() < 1e-12);
    assert!(r10 < 0.2 && r16 < 0.02 && r16 < r10, "{r3} {r10} {r16}");
}

#[test]
fn biharmonic_problem_is_consistent() {
    let prob = biharmonic_problem::<f64>(63).unwrap();
    assert_eq!(prob.a.kind(), "toeplitz");
    assert!(prob.a.is_symmetric(0.0));
    let r = prob.a.residual(&prob.b, &prob.x_exact).unwrap();
    assert!(r.iter().all(|v| *v == 0.0));
    assert!(biharmonic_problem::<f64>(0).is_err());
    assert!(Operator::toeplitz(prob.symbol.unwrap(), 63).is_ok());
}

proptest! {
    #[test]
    fn basis_values_are_bounded_and_sum_to_one(mu in 1usize..12, nu in 1usize..30, x in 0.0f64..=1.0) {
        let basis = Basis::uniform(nu, mu).unwrap();
        let v = basis.eval_all(x, 0);
        prop_assert_eq!(v.len(), nu + mu);
        prop_assert!(v.iter().all(|b| *b >= -1e-15 && *b <= 1.0 + 1e-15));
        prop_assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn iga_symbol_is_even_and_nonnegative(mu in 2usize..17, x in 0.0f64..PI) {
        let a = iga_symbol(mu, x).unwrap();
        let b = iga_symbol(mu, -x).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
        prop_assert!(a >= 0.0);
    }
}
