//! Zero orders, polynomial generation, the Galerkin coarse symbol and the
//! sufficient conditions for two-grid and V-cycle optimality.

use std::fmt;

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::cosine;
use crate::error::{Error, Result};
use crate::scalar::{max_abs, Scalar};
use crate::symbol::{SubdivisionSymbol, MAX_DERIVATIVE_ORDER};
use crate::trig::TrigSymbol;

/// Threshold on `min |p|` over `[-π/g, π/g]`.
pub const COHEN_TOL: f64 = 1e-9;
/// Grid size used before local refinement in [`cohen_check`].
pub const COHEN_GRID: usize = 4096;
/// Samples used to check that `f` is positive away from its zero.
pub const HYPOTHESIS_SAMPLES: usize = 8192;
/// Radius of the excluded neighbourhood around the declared zero.
pub const HYPOTHESIS_EXCLUSION: f64 = 1e-3;
/// Coefficients of a coarse symbol below this (relative) size are dropped.
pub const COARSE_TRUNCATION: f64 = 1e-13;

fn wrap<T: Scalar>(x: T) -> T {
    let two_pi = T::of(2.0) * T::PI();
    let r = x % two_pi;
    if r < T::zero() {
        r + two_pi
    } else {
        r
    }
}

/// `{x + 2πj/g mod 2π : j = 0..g-1}`
pub fn g_corners<T: Scalar>(x: T, g: usize) -> Vec<T> {
    let step = T::of(2.0) * T::PI() / T::of_usize(g);
    (0..g).map(|j| wrap(x + T::of_usize(j) * step)).collect()
}

/// The g-corners of `x` without `x` itself.
pub fn mirror_points<T: Scalar>(x: T, g: usize) -> Vec<T> {
    g_corners(x, g).into_iter().skip(1).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroOrderReport {
    pub location: f64,
    /// Order of the zero; `0` when the function does not vanish at `location`.
    pub order: u32,
    /// The first derivative above tolerance, of order `order`.
    pub leading_derivative: f64,
}

impl ZeroOrderReport {
    pub fn is_zero(&self) -> bool {
        self.order > 0
    }
}

fn zero_order_of_series<T: Scalar>(half: &[T], x0: T) -> Result<ZeroOrderReport> {
    if half.iter().all(|c| c.is_zero()) {
        return Err(Error::IdenticallyZero);
    }
    for m in 0..=MAX_DERIVATIVE_ORDER {
        let d = cosine::derivative(half, x0, m)?;
        if d.abs() > cosine::zero_tolerance(half, m) {
            return Ok(ZeroOrderReport {
                location: x0.to_f64_lossy(),
                order: m,
                leading_derivative: d.to_f64_lossy(),
            });
        }
    }
    Err(Error::OrderTooLarge {
        order: MAX_DERIVATIVE_ORDER + 1,
        max: MAX_DERIVATIVE_ORDER,
    })
}

/// Smallest `m` with `|D^m f(x0)|` above the scale-aware tolerance.
pub fn order_of_zero<T: Scalar>(f: &TrigSymbol<T>, x0: T) -> Result<ZeroOrderReport> {
    zero_order_of_series(f.half(), x0)
}

/// Order of the zero of a subdivision symbol at `y`.
pub fn symbol_zero_order<T: Scalar>(p: &SubdivisionSymbol<T>, y: T) -> Result<ZeroOrderReport> {
    zero_order_of_series(p.half(), y)
}

/// Largest `d` such that `p` and its first `d` derivatives vanish at every
/// nontrivial g-th root of unity, `-1` if `p` itself does not vanish there.
pub fn generation_degree<T: Scalar>(p: &SubdivisionSymbol<T>) -> i64 {
    let corners = mirror_points(T::zero(), p.arity());
    for m in 0..=MAX_DERIVATIVE_ORDER {
        let tol = cosine::zero_tolerance(p.half(), m);
        let vanishes = corners.iter().all(|&y| {
            cosine::derivative(p.half(), y, m)
                .map(|d| d.abs() <= tol)
                .unwrap_or(false)
        });
        if !vanishes {
            return m as i64 - 1;
        }
    }
    p.smoothing_factor_split().d()
}

/// `f_1(x) = (1/g) Σ_{y∈Ω_g(x/g)} f(y) p(y)²` evaluated directly.
pub fn coarse_symbol_value<T: Scalar>(f: &TrigSymbol<T>, p: &SubdivisionSymbol<T>, x: T) -> T {
    let g = p.arity();
    let gt = T::of_usize(g);
    g_corners(x / gt, g)
        .into_iter()
        .map(|y| {
            let py = p.eval(y);
            f.eval(y) * py * py
        })
        .sum::<T>()
        / gt
}

/// Fourier coefficients of the Galerkin coarse symbol, from an oversampled
/// FFT of [`coarse_symbol_value`].
pub fn coarse_symbol<T: Scalar>(f: &TrigSymbol<T>, p: &SubdivisionSymbol<T>) -> TrigSymbol<T> {
    let total = f.degree() + 2 * p.degree();
    let bound = total / p.arity();
    let m = 4 * (total + 1);
    let mt = T::of_usize(m);
    let two_pi = T::of(2.0) * T::PI();
    let mut buf: Vec<Complex<T>> = (0..m)
        .map(|k| {
            Complex::new(
                coarse_symbol_value(f, p, two_pi * T::of_usize(k) / mt),
                T::zero(),
            )
        })
        .collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let mut half: Vec<T> = buf.iter().take(bound + 1).map(|c| c.re / mt).collect();
    let cut = T::tol(COARSE_TRUNCATION) * max_abs(&half);
    for c in half.iter_mut() {
        if c.abs() < cut {
            *c = T::zero();
        }
    }
    TrigSymbol::from_half(half).expect("finite coefficients")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CohenReport {
    pub ok: bool,
    pub min_modulus: f64,
    pub argmin: f64,
}

/// Checks `|p(e^{-ix})| > 0` on `[-π/g, π/g]` by dense sampling followed by
/// golden-section refinement around the sampled minimiser.
pub fn cohen_check<T: Scalar>(p: &SubdivisionSymbol<T>) -> CohenReport {
    let edge = T::PI() / T::of_usize(p.arity());
    let h = T::of(2.0) * edge / T::of_usize(COHEN_GRID);
    let modulus = |x: T| p.eval(x).abs();
    let (mut best_x, mut best) = (-edge, modulus(-edge));
    for k in 1..=COHEN_GRID {
        let x = -edge + T::of_usize(k) * h;
        let v = modulus(x);
        if v < best {
            best = v;
            best_x = x;
        }
    }
    let (mut a, mut b) = ((best_x - h).max(-edge), (best_x + h).min(edge));
    let ratio = T::of(0.5 * (5f64.sqrt() - 1.0));
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    for _ in 0..80 {
        if modulus(c) < modulus(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - ratio * (b - a);
        d = a + ratio * (b - a);
    }
    let mid = (a + b) / T::of(2.0);
    if modulus(mid) < best {
        best = modulus(mid);
        best_x = mid;
    }
    CohenReport {
        ok: best > T::of(COHEN_TOL),
        min_modulus: best.to_f64_lossy(),
        argmin: best_x.to_f64_lossy(),
    }
}

/// Verifies that `f(x0) = 0` and that `f > 0` at sampled points away from `x0`.
pub fn check_hypothesis<T: Scalar>(f: &TrigSymbol<T>, x0: T) -> Result<()> {
    if f.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let scale = max_abs(f.half()) * T::of_usize(2 * f.degree() + 1);
    let at_zero = f.eval(x0);
    if at_zero.abs() > T::tol(1e-10) * scale {
        return Err(Error::HypothesisViolated(format!(
            "f({}) = {} is not zero",
            x0.to_f64_lossy(),
            at_zero.to_f64_lossy()
        )));
    }
    let two_pi = T::of(2.0) * T::PI();
    let x0 = wrap(x0);
    let excl = T::of(HYPOTHESIS_EXCLUSION);
    for k in 0..HYPOTHESIS_SAMPLES {
        let x = two_pi * T::of_usize(k) / T::of_usize(HYPOTHESIS_SAMPLES);
        let dist = (x - x0).abs();
        if dist.min(two_pi - dist) < excl {
            continue;
        }
        let v = f.eval(x);
        if v <= T::zero() {
            return Err(Error::HypothesisViolated(format!(
                "f({}) = {} is not positive; f has an additional zero, which needs a grid \
                 transfer vanishing at the mirror points of that zero as well",
                x.to_f64_lossy(),
                v.to_f64_lossy()
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificationKind {
    Tgm,
    VCycle,
}

impl fmt::Display for CertificationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Tgm => "tgm",
            Self::VCycle => "vcycle",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificationDetails {
    pub x0: f64,
    pub arity: usize,
    pub f_zero: ZeroOrderReport,
    /// `p(x0)`
    pub p_at_x0: f64,
    /// `p(0)`, compared against `g` by the zero conditions.
    pub p_at_zero: f64,
    /// Zero orders of `p` at the mirror points of `x0`.
    pub mirror_orders: Vec<(f64, u32)>,
    pub cohen: CohenReport,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificationReport {
    pub kind: CertificationKind,
    pub tgm_ok: bool,
    pub vcycle_zero_condition_ok: bool,
    pub cohen_ok: bool,
    pub generation_degree: i64,
    /// Order `m` of the zero of `f`.
    pub required_order: u32,
    pub details: CertificationDetails,
}

impl CertificationReport {
    /// Verdict for the certification that was requested.
    pub fn passed(&self) -> bool {
        match self.kind {
            CertificationKind::Tgm => self.tgm_ok,
            CertificationKind::VCycle => self.vcycle_zero_condition_ok && self.cohen_ok,
        }
    }

    pub fn to_text(&self) -> String {
        let d = &self.details;
        let verdict = |b: bool| if b { "ok" } else { "fail" };
        let mut s = String::new();
        s.push_str(&format!("certification: {}\n", self.kind));
        s.push_str(&format!("  arity g: {}\n", d.arity));
        s.push_str(&format!(
            "  zero of f at x0 = {:.6}: order m = {}\n",
            d.x0, self.required_order
        ));
        s.push_str(&format!(
            "  generation degree: {}\n",
            self.generation_degree
        ));
        s.push_str(&format!(
            "  p(0) = {:.12}, p(x0) = {:.12}\n",
            d.p_at_zero, d.p_at_x0
        ));
        for (y, m) in &d.mirror_orders {
            s.push_str(&format!("  zero order of p at mirror point {y:.6}: {m}\n"));
        }
        s.push_str(&format!(
            "  cohen: min |p| = {:.6e} at x = {:.6} ({})\n",
            d.cohen.min_modulus,
            d.cohen.argmin,
            verdict(self.cohen_ok)
        ));
        s.push_str(&format!("  tgm: {}\n", verdict(self.tgm_ok)));
        s.push_str(&format!(
            "  vcycle zero conditions: {}\n",
            verdict(self.vcycle_zero_condition_ok)
        ));
        s.push_str(&format!("  verdict: {}\n", verdict(self.passed())));
        s
    }

    pub fn to_key_values(&self) -> String {
        let d = &self.details;
        let orders: Vec<String> = d.mirror_orders.iter().map(|(_, m)| m.to_string()).collect();
        [
            format!("kind={}", self.kind),
            format!("arity={}", d.arity),
            format!("x0={}", d.x0),
            format!("required_order={}", self.required_order),
            format!("generation_degree={}", self.generation_degree),
            format!("p_at_zero={}", d.p_at_zero),
            format!("p_at_x0={}", d.p_at_x0),
            format!("mirror_orders={}", orders.join(";")),
            format!("cohen_min_modulus={}", d.cohen.min_modulus),
            format!("cohen_ok={}", self.cohen_ok),
            format!("tgm_ok={}", self.tgm_ok),
            format!("vcycle_zero_condition_ok={}", self.vcycle_zero_condition_ok),
            format!("passed={}", self.passed()),
        ]
        .join("\n")
            + "\n"
    }
}

impl fmt::Display for CertificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn certify<T: Scalar>(
    kind: CertificationKind,
    f: &TrigSymbol<T>,
    p: &SubdivisionSymbol<T>,
    x0: T,
) -> Result<CertificationReport> {
    check_hypothesis(f, x0)?;
    let g = p.arity();
    let f_zero = order_of_zero(f, x0)?;
    let m = f_zero.order;
    let gen = generation_degree(p);
    let cohen = cohen_check(p);
    let p_at_x0 = p.eval(x0);
    let p_at_zero = p.eval(T::zero());

    let mut mirror_orders = Vec::with_capacity(g - 1);
    for y in mirror_points(x0, g) {
        mirror_orders.push((y.to_f64_lossy(), symbol_zero_order(p, y)?.order));
    }

    let half_order = (m as i64 + 1) / 2;
    let at_origin = wrap(x0).min(T::of(2.0) * T::PI() - wrap(x0)) < T::tol(1e-12);
    let tgm_ok = if at_origin {
        gen >= half_order - 1 && p_at_zero > T::zero()
    } else {
        mirror_orders.iter().all(|&(_, o)| 2 * o as i64 >= m as i64) && p_at_x0.abs() > T::zero()
    };
    let gt = T::of_usize(g);
    let vcycle_zero_condition_ok =
        at_origin && gen >= m as i64 - 1 && (p_at_zero - gt).abs() <= T::tol(1e-10) * gt;

    Ok(CertificationReport {
        kind,
        tgm_ok,
        vcycle_zero_condition_ok,
        cohen_ok: cohen.ok,
        generation_degree: gen,
        required_order: m,
        details: CertificationDetails {
            x0: x0.to_f64_lossy(),
            arity: g,
            f_zero,
            p_at_x0: p_at_x0.to_f64_lossy(),
            p_at_zero: p_at_zero.to_f64_lossy(),
            mirror_orders,
            cohen,
        },
    })
}

/// Two-grid certificate for the zero of `f` at `x0`. At `x0 = 0` this is
/// `generation_degree(p) ≥ ⌈m/2⌉ - 1` with `p(0) > 0`; elsewhere every mirror
/// point `y` needs `2 θ_p(y) ≥ m` and `p(x0) ≠ 0`.
pub fn certify_tgm<T: Scalar>(
    f: &TrigSymbol<T>,
    p: &SubdivisionSymbol<T>,
    x0: T,
) -> Result<CertificationReport> {
    certify(CertificationKind::Tgm, f, p, x0)
}

/// V-cycle certificate for a symbol `f` with its zero at the origin: zero
/// conditions of order `m` (generation degree `m - 1` and `p(0) = g`)
/// together with Cohen's condition.
pub fn certify_vcycle<T: Scalar>(
    f: &TrigSymbol<T>,
    p: &SubdivisionSymbol<T>,
) -> Result<CertificationReport> {
    certify(CertificationKind::VCycle, f, p, T::zero())
}
