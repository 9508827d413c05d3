use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use proptest::prelude::*;
use subdiv_mg::laurent::LaurentPoly;
use subdiv_mg::{RationalMask, Symbol, Symbol32};

fn binary_orders() -> Vec<(u32, u32)> {
    (1..=5).flat_map(|j| (0..j).map(move |l| (j, l))).collect()
}

fn ternary_orders() -> Vec<(u32, u32)> {
    (1..=7)
        .flat_map(|j| (1..=j).step_by(2).map(move |l| (j, l)))
        .collect()
}

fn all_symbols() -> Vec<Symbol> {
    binary_orders()
        .into_iter()
        .map(|(j, l)| Symbol::binary_pseudo_spline(j, l).unwrap())
        .chain(
            ternary_orders()
                .into_iter()
                .map(|(j, l)| Symbol::ternary_pseudo_spline(j, l).unwrap()),
        )
        .collect()
}

#[test]
fn value_at_origin_is_arity() {
    for p in all_symbols() {
        assert!((p.eval(0.0) - p.arity() as f64).abs() < 1e-13, "{p:?}");
    }
    for (j, l) in binary_orders() {
        let m = RationalMask::binary_pseudo_spline(j, l).unwrap();
        assert_eq!(m.sum(), BigRational::from_integer(BigInt::from(2)));
    }
    for (j, l) in ternary_orders() {
        let m = RationalMask::ternary_pseudo_spline(j, l).unwrap();
        assert_eq!(m.sum(), BigRational::from_integer(BigInt::from(3)));
    }
}

#[test]
fn bspline_masks_are_scaled_binomial_rows() {
    for j in 1..=6u32 {
        let m = RationalMask::binary_pseudo_spline(j, 0).unwrap();
        let row = 2 * j as u64;
        let scale = BigRational::new(BigInt::from(1), BigInt::from(2u64.pow(2 * j - 1)));
        let want: Vec<BigRational> = (0..=row)
            .map(|k| BigRational::from_integer(BigInt::from(binomial(row, k))) * scale.clone())
            .collect();
        assert_eq!(m.coefficients(), want, "J={j}");
    }
}

#[test]
fn interpolatory_masks_vanish_at_even_offsets() {
    for j in 1..=6u32 {
        let m = RationalMask::binary_pseudo_spline(j, j - 1).unwrap();
        assert_eq!(m.coefficient(0), BigRational::from_integer(BigInt::from(1)));
        let w = m.half_width() as i64;
        for a in (-w..=w).filter(|a| a % 2 == 0 && *a != 0) {
            assert_eq!(
                m.coefficient(a),
                BigRational::from_integer(BigInt::from(0)),
                "J={j} offset {a}"
            );
        }
    }
}

#[test]
fn factor_split_reconstructs_every_pseudo_spline() {
    for p in all_symbols() {
        let split = p.smoothing_factor_split();
        let factor = LaurentPoly::<f64>::geometric(p.arity()).pow(split.factor_power as u32);
        let rebuilt = &factor * &split.quotient;
        let orig = p.laurent();
        let lo = rebuilt.min_exp().min(orig.min_exp());
        let hi = rebuilt.max_exp().max(orig.max_exp());
        for e in lo..=hi {
            assert!(
                (rebuilt.coefficient(e) - orig.coefficient(e)).abs() < 1e-12,
                "{p:?}"
            );
        }
    }
}

#[test]
fn single_precision_symbols_agree_with_double() {
    for (j, l) in [(2, 1), (3, 2)] {
        let p = Symbol::binary_pseudo_spline(j, l).unwrap();
        let q = Symbol32::binary_pseudo_spline(j, l).unwrap();
        for k in 0..32 {
            let x = k as f64 * 0.1;
            assert!((p.eval(x) - q.eval(x as f32) as f64).abs() < 1e-5);
        }
    }
}

proptest! {
    #[test]
    fn symbols_are_even(idx in 0usize..24, x in -10.0f64..10.0) {
        let symbols = all_symbols();
        let p = &symbols[idx % symbols.len()];
        prop_assert!((p.eval(x) - p.eval(-x)).abs() < 1e-13);
    }

    #[test]
    fn mask_text_roundtrips(coeffs in prop::collection::vec((-50i64..50, 1i64..40), 1..6), g in 2usize..5) {
        let half: Vec<BigRational> = coeffs
            .iter()
            .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
            .collect();
        let mut full: Vec<BigRational> = half.iter().skip(1).rev().cloned().collect();
        full.extend(half.iter().cloned());
        let centre = half.len() - 1;
        let m = RationalMask::new(g, full, centre).unwrap();
        prop_assert_eq!(RationalMask::from_text(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn split_of_random_products_recovers_power(extra in 0u32..4, c in prop::collection::vec(0.1f64..2.0, 1..4)) {
        // (1+z)^{2k} · (symmetric positive-valued remainder) splits with power ≥ 2k
        let mut rest_half = c.clone();
        rest_half[0] += 2.0 * c.iter().skip(1).sum::<f64>();
        let rest = Symbol::from_half(2, rest_half).unwrap();
        let sigma = Symbol::binary_pseudo_spline(1, 0).unwrap().laurent();
        let prod = &sigma.pow(extra) * &rest.laurent();
        let d = (prod.max_exp() - prod.min_exp()) as usize / 2;
        let half: Vec<f64> = (0..=d as i64).map(|a| prod.coefficient(a)).collect();
        let p = Symbol::from_half(2, half).unwrap();
        let split = p.smoothing_factor_split();
        prop_assert!(split.factor_power >= 2 * extra as usize);
    }
}
