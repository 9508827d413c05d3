//! B-splines on an open uniform knot vector over `[0, 1]`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Degree-`μ` B-splines on `ν` uniform intervals. The knot vector has
/// `ν + 2μ + 1` entries with `μ + 1` copies of each endpoint; there are
/// `ν + μ` basis functions, indexed from 0.
#[derive(Clone, Debug, PartialEq)]
pub struct BSplineBasis<T> {
    degree: usize,
    intervals: usize,
    knots: Vec<T>,
}

impl<T: Scalar> BSplineBasis<T> {
    pub fn uniform(intervals: usize, degree: usize) -> Result<Self> {
        if degree < 1 {
            return Err(Error::InvalidDegree(format!(
                "spline degree must be at least 1, got {degree}"
            )));
        }
        if intervals < 1 {
            return Err(Error::InvalidDegree(
                "at least one knot interval is needed".into(),
            ));
        }
        let nu = T::of_usize(intervals);
        let knots = std::iter::repeat_n(T::zero(), degree + 1)
            .chain((1..intervals).map(|j| T::of_usize(j) / nu))
            .chain(std::iter::repeat_n(T::one(), degree + 1))
            .collect();
        Ok(Self {
            degree,
            intervals,
            knots,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn knots(&self) -> &[T] {
        &self.knots
    }

    pub fn num_basis(&self) -> usize {
        self.intervals + self.degree
    }

    /// Knot averages `(t_{j+1} + … + t_{j+μ}) / μ`, one per basis function.
    pub fn greville(&self) -> Vec<T> {
        let mu = self.degree;
        (0..self.num_basis())
            .map(|j| self.knots[j + 1..=j + mu].iter().copied().sum::<T>() / T::of_usize(mu))
            .collect()
    }

    /// Values (or derivatives of the given order) of every basis function
    /// at `x`. Outside `[0, 1]` all values are zero; at `x = 1` the last
    /// nonempty interval is treated as closed.
    pub fn eval_all(&self, x: T, derivative: usize) -> Vec<T> {
        let t = &self.knots;
        let mu = self.degree;
        let mut b = vec![T::zero(); t.len() - 1];
        let last = *t.last().expect("nonempty knots");
        if derivative > mu || x < t[0] || x > last {
            b.truncate(self.num_basis());
            return b;
        }
        let span = if x == last {
            (0..t.len() - 1).rev().find(|&j| t[j] < t[j + 1])
        } else {
            (0..t.len() - 1).find(|&j| t[j] <= x && x < t[j + 1])
        };
        if let Some(s) = span {
            b[s] = T::one();
        }
        let ratio = |num: T, den: T| if den.is_zero() { T::zero() } else { num / den };
        let top = mu - derivative;
        for m in 1..=top {
            for j in 0..t.len() - 1 - m {
                b[j] = ratio(x - t[j], t[j + m] - t[j]) * b[j]
                    + ratio(t[j + m + 1] - x, t[j + m + 1] - t[j + 1]) * b[j + 1];
            }
        }
        for m in top + 1..=mu {
            let mt = T::of_usize(m);
            for j in 0..t.len() - 1 - m {
                b[j] =
                    mt * (ratio(b[j], t[j + m] - t[j]) - ratio(b[j + 1], t[j + m + 1] - t[j + 1]));
            }
        }
        b.truncate(self.num_basis());
        b
    }

    /// `D^derivative B_j(x)` for a 0-based index `j`.
    pub fn eval(&self, j: usize, x: T, derivative: usize) -> Result<T> {
        if j >= self.num_basis() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.num_basis(),
            });
        }
        Ok(self.eval_all(x, derivative)[j])
    }

    /// Support `[t_j, t_{j+μ+1}]` of basis function `j`.
    pub fn support(&self, j: usize) -> (T, T) {
        (self.knots[j], self.knots[j + self.degree + 1])
    }
}

/// Cardinal B-spline of degree `m` on the integer knots `0, 1, …, m+1`.
pub fn cardinal_bspline<T: Scalar>(m: usize, x: T) -> T {
    let mut v: Vec<T> = (0..=m)
        .map(|i| {
            let y = x - T::of_usize(i);
            if y >= T::zero() && y < T::one() {
                T::one()
            } else {
                T::zero()
            }
        })
        .collect();
    for k in 1..=m {
        let kt = T::of_usize(k);
        for i in 0..=m - k {
            let y = x - T::of_usize(i);
            v[i] = (y * v[i] + (kt + T::one() - y) * v[i + 1]) / kt;
        }
    }
    v[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knots_and_greville() {
        let b = BSplineBasis::<f64>::uniform(4, 2).unwrap();
        assert_eq!(b.knots(), &[0.0, 0.0, 0.0, 0.25, 0.5, 0.75, 1.0, 1.0, 1.0]);
        assert_eq!(b.num_basis(), 6);
        let g = b.greville();
        assert_eq!(g, vec![0.0, 0.125, 0.375, 0.625, 0.875, 1.0]);
        assert!(BSplineBasis::<f64>::uniform(4, 0).is_err());
    }

    #[test]
    fn hat_function_peaks_at_its_knot() {
        let b = BSplineBasis::<f64>::uniform(4, 1).unwrap();
        assert!((b.eval(2, 0.5, 0).unwrap() - 1.0).abs() < 1e-15);
        assert!((b.eval(2, 0.375, 0).unwrap() - 0.5).abs() < 1e-15);
        assert!((b.eval(4, 1.0, 0).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(
            b.eval(5, 0.5, 0),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let b = BSplineBasis::<f64>::uniform(7, 4).unwrap();
        let h = 1e-5;
        for &x in &[0.11, 0.4, 0.77] {
            let d1 = b.eval_all(x, 1);
            let d2 = b.eval_all(x, 2);
            let lo = b.eval_all(x - h, 0);
            let hi = b.eval_all(x + h, 0);
            let mid = b.eval_all(x, 0);
            for j in 0..b.num_basis() {
                assert!((d1[j] - (hi[j] - lo[j]) / (2.0 * h)).abs() < 1e-6);
                assert!((d2[j] - (hi[j] - 2.0 * mid[j] + lo[j]) / (h * h)).abs() < 1e-3);
            }
        }
    }

    #[test]
    fn cardinal_values() {
        assert!((cardinal_bspline::<f64>(1, 1.0) - 1.0).abs() < 1e-15);
        assert!((cardinal_bspline::<f64>(3, 2.0) - 2.0 / 3.0).abs() < 1e-15);
        assert!((cardinal_bspline::<f64>(3, 1.0) - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(cardinal_bspline::<f64>(2, 3.5), 0.0);
    }
}
