//! Even cosine series `c_0 + 2 Σ_{k≥1} c_k cos(k x)` and their exact
//! derivatives. Shared by subdivision and trigonometric symbols.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Beyond this order the monomial growth `k^order` swamps the cancellation
/// needed to resolve zeros in double precision.
pub const MAX_DERIVATIVE_ORDER: u32 = 12;

pub fn eval<T: Scalar>(half: &[T], x: T) -> T {
    let two = T::of(2.0);
    let mut acc = half.first().copied().unwrap_or_else(T::zero);
    for (k, &c) in half.iter().enumerate().skip(1) {
        acc = acc + two * c * (T::of_usize(k) * x).cos();
    }
    acc
}

pub fn derivative<T: Scalar>(half: &[T], x: T, order: u32) -> Result<T> {
    if order > MAX_DERIVATIVE_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            max: MAX_DERIVATIVE_ORDER,
        });
    }
    if order == 0 {
        return Ok(eval(half, x));
    }
    // d^m/dx^m cos(kx) = k^m cos(kx + mπ/2)
    let shift = T::of(order as f64) * T::FRAC_PI_2();
    let two = T::of(2.0);
    let mut acc = T::zero();
    for (k, &c) in half.iter().enumerate().skip(1) {
        let kt = T::of_usize(k);
        acc = acc + two * c * kt.powi(order as i32) * (kt * x + shift).cos();
    }
    Ok(acc)
}

/// Scale-aware threshold for declaring the `order`-th derivative zero:
/// `1e-8 · max|c_k| · degree^order`.
pub fn zero_tolerance<T: Scalar>(half: &[T], order: u32) -> T {
    let amax = half.iter().fold(T::zero(), |m, &c| m.max(c.abs()));
    let degree = T::of_usize(half.len().saturating_sub(1).max(1));
    T::tol(1e-8) * amax * degree.powi(order as i32)
}

/// Drops trailing exact zeros, keeping at least the constant term.
pub fn trim<T: Scalar>(mut half: Vec<T>) -> Vec<T> {
    while half.len() > 1 && half.last().is_some_and(|c| c.is_zero()) {
        half.pop();
    }
    if half.is_empty() {
        half.push(T::zero());
    }
    half
}
