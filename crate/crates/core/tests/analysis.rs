use std::f64::consts::PI;

use proptest::prelude::*;
use subdiv_mg::analysis::{
    certify_tgm, certify_vcycle, check_hypothesis, coarse_symbol, coarse_symbol_value, cohen_check,
    generation_degree, order_of_zero,
};
use subdiv_mg::{Error, Symbol, Trig};

fn table_symbols() -> Vec<Symbol> {
    let bin = [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)];
    let ter = [(1, 1), (2, 1), (3, 1), (3, 3), (5, 3), (5, 5)];
    bin.iter()
        .map(|&(j, l)| Symbol::binary_pseudo_spline(j, l).unwrap())
        .chain(
            ter.iter()
                .map(|&(j, l)| Symbol::ternary_pseudo_spline(j, l).unwrap()),
        )
        .collect()
}

fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// h = f p², then keep every g-th coefficient around the centre
fn decimated_oracle(f: &Trig, p: &Symbol) -> Vec<f64> {
    let mask = p.mask();
    let h = convolve(&convolve(&f.stencil(), &mask), &mask);
    let centre = (h.len() - 1) / 2;
    let g = p.arity();
    (0..=centre / g).map(|m| h[centre + g * m]).collect()
}

#[test]
fn binary_generation_degree() {
    for j in 1..=5u32 {
        for l in 0..j {
            let p = Symbol::binary_pseudo_spline(j, l).unwrap();
            assert_eq!(generation_degree(&p), 2 * j as i64 - 1, "J={j} L={l}");
        }
    }
}

#[test]
fn ternary_generation_degree() {
    for j in 1..=7u32 {
        for l in (1..=j).step_by(2) {
            let p = Symbol::ternary_pseudo_spline(j, l).unwrap();
            assert_eq!(generation_degree(&p), j as i64, "J={j} L={l}");
        }
    }
}

#[test]
fn cohen_holds_for_table_symbols() {
    for p in table_symbols() {
        let r = cohen_check(&p);
        assert!(r.ok, "{p:?}: {r:?}");
        assert!(r.argmin.abs() <= PI / p.arity() as f64 + 1e-12);
    }
}

#[test]
fn cohen_rejects_symbol_vanishing_inside_interval() {
    // 1 + cos 2x has a zero at π/2 which lies in [-π/2, π/2]
    let p = Symbol::from_half(2, vec![1.0, 0.0, 0.5]).unwrap();
    assert!(!cohen_check(&p).ok);
}

#[test]
fn coarse_symbol_matches_decimation() {
    for f in [
        Trig::laplacian(),
        Trig::biharmonic(),
        Trig::from_half(vec![3.0, -1.0, 0.25, 0.1]).unwrap(),
    ] {
        for p in table_symbols() {
            let got = coarse_symbol(&f, &p);
            let want = decimated_oracle(&f, &p);
            let scale = want.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (m, w) in want.iter().enumerate() {
                assert!(
                    (got.coefficient(m as i64) - w).abs() <= 1e-12 * scale,
                    "{p:?} m={m}"
                );
            }
            assert!(got.degree() <= want.len());
        }
    }
}

#[test]
fn coarse_symbol_of_constant_with_linear_bspline() {
    // (1/2)[(1 + cos(x/2))² + (1 - cos(x/2))²] = 3/2 + cos(x)/2
    let p = Symbol::binary_pseudo_spline(1, 0).unwrap();
    let f1 = coarse_symbol(&Trig::constant(1.0), &p);
    assert!((f1.coefficient(0) - 1.5).abs() < 1e-14);
    assert!((f1.coefficient(1) - 0.25).abs() < 1e-14);
    assert_eq!(f1.degree(), 1);
}

#[test]
fn coarse_symbol_preserves_zero_order() {
    for p in table_symbols() {
        let f = Trig::biharmonic();
        // p must vanish to order ≥ 2 at the mirror points for the order 4 zero to survive
        if 2 * (generation_degree(&p) + 1) < 4 {
            continue;
        }
        let f1 = coarse_symbol(&f, &p);
        assert_eq!(order_of_zero(&f1, 0.0).unwrap().order, 4, "{p:?}");
    }
}

#[test]
fn zero_orders_of_model_symbols() {
    assert_eq!(order_of_zero(&Trig::laplacian(), 0.0).unwrap().order, 2);
    assert_eq!(order_of_zero(&Trig::biharmonic(), 0.0).unwrap().order, 4);
    assert_eq!(order_of_zero(&Trig::laplacian(), PI).unwrap().order, 0);
    assert_eq!(
        order_of_zero(&Trig::from_half(vec![0.0]).unwrap(), 0.0),
        Err(Error::IdenticallyZero)
    );
}

#[test]
fn hypothesis_check() {
    assert!(check_hypothesis(&Trig::biharmonic(), 0.0).is_ok());
    assert!(matches!(
        check_hypothesis(&Trig::constant(1.0), 0.0),
        Err(Error::HypothesisViolated(_))
    ));
    // 2 - 2cos 2x vanishes at π as well
    let f = Trig::from_half(vec![2.0, 0.0, -1.0]).unwrap();
    assert!(matches!(
        check_hypothesis(&f, 0.0),
        Err(Error::HypothesisViolated(_))
    ));
}

#[test]
fn vcycle_certificates_for_biharmonic() {
    let f = Trig::biharmonic();
    for j in 1..=3u32 {
        for l in 0..j {
            let p = Symbol::binary_pseudo_spline(j, l).unwrap();
            assert_eq!(
                certify_vcycle(&f, &p).unwrap().passed(),
                j >= 2,
                "binary J={j} L={l}"
            );
        }
    }
    for (j, l) in [(1, 1), (2, 1), (3, 1), (3, 3), (5, 3), (5, 5)] {
        let p = Symbol::ternary_pseudo_spline(j, l).unwrap();
        assert_eq!(
            certify_vcycle(&f, &p).unwrap().passed(),
            j >= 3,
            "ternary J={j} L={l}"
        );
    }
}

#[test]
fn tgm_certificates_for_laplacian() {
    let f = Trig::laplacian();
    for p in table_symbols() {
        assert!(certify_tgm(&f, &p, 0.0).unwrap().passed(), "{p:?}");
    }
    // zero at π: the binary mirror point is 0 where p(0) = 2, so the order-2 condition fails
    let shifted = Trig::from_half(vec![2.0, 1.0]).unwrap();
    let p = Symbol::binary_pseudo_spline(2, 1).unwrap();
    assert!(!certify_tgm(&shifted, &p, PI).unwrap().passed());
}

#[test]
fn certificate_text_mentions_verdict() {
    let r = certify_vcycle(
        &Trig::biharmonic(),
        &Symbol::binary_pseudo_spline(1, 0).unwrap(),
    )
    .unwrap();
    assert!(!r.passed());
    assert!(r.to_key_values().contains("generation_degree=1"));
}

proptest! {
    #[test]
    fn coarse_value_is_corner_invariant(idx in 0usize..12, x in -PI..PI, shift in -3i32..3) {
        let p = &table_symbols()[idx];
        let f = Trig::biharmonic();
        let a = coarse_symbol_value(&f, p, x);
        let b = coarse_symbol_value(&f, p, x + 2.0 * PI * shift as f64);
        prop_assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()));
    }

    #[test]
    fn coarse_fft_agrees_with_direct_sum(idx in 0usize..12, x in -PI..PI) {
        let p = &table_symbols()[idx];
        let f = Trig::laplacian();
        let direct = coarse_symbol_value(&f, p, x);
        prop_assert!((coarse_symbol(&f, p).eval(x) - direct).abs() < 1e-12 * (1.0 + direct.abs()));
    }
}
