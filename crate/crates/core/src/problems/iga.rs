//! Spline collocation of `-u'' = h` on `[0, 1]` with homogeneous Dirichlet
//! conditions at the Greville abscissae.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{BandMatrix, StructuredOperator};
use crate::problems::bspline::{cardinal_bspline, BSplineBasis};
use crate::problems::ProblemInstance;
use crate::scalar::Scalar;
use crate::trig::TrigSymbol;

/// Truncation of the α-sum in [`iga_symbol`].
pub const IGA_SYMBOL_TERMS: usize = 64;

/// Collocation matrix `A[r][c] = -B''_{c+1}(τ_{r+1})` for `r, c = 0..n-1`,
/// `n = ν + μ - 2`. The first and last B-splines are dropped by the boundary
/// conditions. The matrix is banded and in general not symmetric.
pub fn iga_matrix<T: Scalar>(intervals: usize, degree: usize) -> Result<BandMatrix<T>> {
    if degree < 2 {
        return Err(Error::InvalidDegree(format!(
            "collocation needs degree μ ≥ 2, got {degree}"
        )));
    }
    if intervals < 2 {
        return Err(Error::InvalidDegree(format!(
            "collocation needs ν ≥ 2 intervals, got {intervals}"
        )));
    }
    let basis = BSplineBasis::<T>::uniform(intervals, degree)?;
    let tau = basis.greville();
    let n = intervals + degree - 2;
    let triplets: Vec<(usize, usize, T)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|r| {
            let d2 = basis.eval_all(tau[r + 1], 2);
            (0..n)
                .filter(|&c| !d2[c + 1].is_zero())
                .map(|c| (r, c, -d2[c + 1]))
                .collect::<Vec<_>>()
        })
        .collect();
    BandMatrix::from_triplets(n, &triplets)
}

/// Collocation problem with `x_j = sin(5π(j-1)/(n-1)) + sin(nπ(j-1)/(n-1))`.
pub fn iga_laplacian_problem<T: Scalar>(
    intervals: usize,
    degree: usize,
) -> Result<ProblemInstance<T>> {
    let a = StructuredOperator::Banded(iga_matrix(intervals, degree)?);
    let n = a.dim();
    let denom = T::of_usize(n - 1);
    let x_exact: Vec<T> = (1..=n)
        .map(|j| {
            let s = T::PI() * T::of_usize(j - 1) / denom;
            (T::of(5.0) * s).sin() + (T::of_usize(n) * s).sin()
        })
        .collect();
    let b = a.matvec(&x_exact)?;
    let nu2 = T::of_usize(intervals * intervals);
    Ok(ProblemInstance {
        a,
        b,
        x_exact,
        symbol: Some(iga_stencil_symbol::<T>(degree)?.scale(nu2)),
        description: format!(
            "isogeometric collocation Laplacian, degree {degree}, {intervals} intervals, n = {n}"
        ),
    })
}

/// Number of intervals giving collocation dimension `n` for degree `μ`.
pub fn intervals_for_dim(n: usize, degree: usize) -> Result<usize> {
    (n + 2)
        .checked_sub(degree)
        .filter(|&nu| nu >= 2)
        .ok_or_else(|| {
            Error::InvalidDegree(format!("dimension {n} is too small for degree {degree}"))
        })
}

/// Interior stencil of the collocation matrix on unit spacing,
/// `a_k = -N''_μ((μ+1)/2 + k)` with `N_μ` the cardinal B-spline.
pub fn iga_stencil_symbol<T: Scalar>(degree: usize) -> Result<TrigSymbol<T>> {
    if degree < 2 {
        return Err(Error::InvalidDegree(format!(
            "collocation needs degree μ ≥ 2, got {degree}"
        )));
    }
    let centre = T::of_usize(degree + 1) / T::of(2.0);
    let second = |x: T| {
        let m = degree - 2;
        cardinal_bspline(m, x) - T::of(2.0) * cardinal_bspline(m, x - T::one())
            + cardinal_bspline(m, x - T::of(2.0))
    };
    let reach = degree / 2;
    TrigSymbol::from_half(
        (0..=reach)
            .map(|k| -second(centre + T::of_usize(k)))
            .collect(),
    )
}

/// `f(x) = (2 - 2cos x) h(x)` with
/// `h(x) = Σ_{|α| ≤ terms} (2 sin((x + 2απ)/2) / (x + 2απ))^{μ-1}`.
pub fn iga_symbol_truncated<T: Scalar>(degree: usize, x: T, terms: usize) -> Result<T> {
    if degree < 2 {
        return Err(Error::InvalidDegree(format!(
            "collocation needs degree μ ≥ 2, got {degree}"
        )));
    }
    let two_pi = T::of(2.0) * T::PI();
    let power = (degree - 1) as i32;
    let mut h = T::zero();
    for a in -(terms as i64)..=terms as i64 {
        let y = x + T::of_i64(a) * two_pi;
        let term = if y.abs() < T::epsilon() {
            T::one()
        } else {
            T::of(2.0) * (y / T::of(2.0)).sin() / y
        };
        h = h + term.powi(power);
    }
    Ok((T::of(2.0) - T::of(2.0) * x.cos()) * h)
}

/// [`iga_symbol_truncated`] with [`IGA_SYMBOL_TERMS`] terms.
pub fn iga_symbol<T: Scalar>(degree: usize, x: T) -> Result<T> {
    iga_symbol_truncated(degree, x, IGA_SYMBOL_TERMS)
}
