//! Real even trigonometric polynomials `f(x) = Σ_{|j|≤d} a_j e^{ijx}` with
//! `a_j = a_{-j}`. These generate the circulant and Toeplitz matrices.

use crate::cosine;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::symbol::SubdivisionSymbol;

#[derive(Clone, Debug, PartialEq)]
pub struct TrigSymbol<T> {
    /// `a_0, a_1, …, a_d`
    half: Vec<T>,
}

impl<T: Scalar> TrigSymbol<T> {
    pub fn from_half(half: Vec<T>) -> Result<Self> {
        if half.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidSymbol(
                "non-finite Fourier coefficient".into(),
            ));
        }
        Ok(Self {
            half: cosine::trim(half),
        })
    }

    /// From a centred stencil `a_{-d}, …, a_d`.
    pub fn from_stencil(stencil: &[T]) -> Result<Self> {
        if stencil.len().is_multiple_of(2) {
            return Err(Error::InvalidSymbol(format!(
                "stencil must have odd length, got {}",
                stencil.len()
            )));
        }
        let d = stencil.len() / 2;
        let scale = crate::scalar::max_abs(stencil).max(T::one());
        for k in 1..=d {
            if (stencil[d + k] - stencil[d - k]).abs() > T::tol(1e-12) * scale {
                return Err(Error::InvalidSymbol(format!(
                    "stencil is not symmetric at offset {k}"
                )));
            }
        }
        Self::from_half(stencil[d..].to_vec())
    }

    pub fn constant(c: T) -> Self {
        Self { half: vec![c] }
    }

    /// `2 - 2cos x`
    pub fn laplacian() -> Self {
        Self {
            half: vec![T::of(2.0), -T::one()],
        }
    }

    /// `(2 - 2cos x)²`
    pub fn biharmonic() -> Self {
        Self {
            half: vec![T::of(6.0), T::of(-4.0), T::one()],
        }
    }

    pub fn degree(&self) -> usize {
        self.half.len() - 1
    }

    pub fn half(&self) -> &[T] {
        &self.half
    }

    pub fn coefficient(&self, j: i64) -> T {
        self.half
            .get(j.unsigned_abs() as usize)
            .copied()
            .unwrap_or_else(T::zero)
    }

    /// `a_{-d}, …, a_d`
    pub fn stencil(&self) -> Vec<T> {
        let d = self.degree() as i64;
        (-d..=d).map(|j| self.coefficient(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.half.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, x: T) -> T {
        cosine::eval(&self.half, x)
    }

    pub fn derivative_at(&self, x: T, order: u32) -> Result<T> {
        cosine::derivative(&self.half, x, order)
    }

    /// Product of two symbols (convolution of the coefficients).
    pub fn mul(&self, other: &Self) -> Self {
        let a = self.stencil();
        let b = other.stencil();
        let mut out = vec![T::zero(); a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = out[i + j] + x * y;
            }
        }
        let d = out.len() / 2;
        Self {
            half: cosine::trim(out[d..].to_vec()),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            half: cosine::trim(self.half.iter().map(|&c| c * s).collect()),
        }
    }
}

impl<T: Scalar> From<&SubdivisionSymbol<T>> for TrigSymbol<T> {
    fn from(p: &SubdivisionSymbol<T>) -> Self {
        Self {
            half: p.half().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn standard_symbols() {
        let l = TrigSymbol::<f64>::laplacian();
        assert!(l.eval(0.0).abs() < 1e-15);
        assert!((l.eval(PI) - 4.0).abs() < 1e-15);
        let b = TrigSymbol::<f64>::biharmonic();
        assert_eq!(b.stencil(), vec![1.0, -4.0, 6.0, -4.0, 1.0]);
        assert_eq!(l.mul(&l), b);
        assert!((b.eval(1.3) - (2.0 - 2.0 * 1.3f64.cos()).powi(2)).abs() < 1e-13);
    }

    #[test]
    fn stencil_roundtrip_and_symmetry() {
        let s = TrigSymbol::<f64>::from_stencil(&[1.0, -4.0, 6.0, -4.0, 1.0]).unwrap();
        assert_eq!(s, TrigSymbol::biharmonic());
        assert!(TrigSymbol::<f64>::from_stencil(&[1.0, 2.0, 3.0]).is_err());
        assert!(TrigSymbol::<f64>::from_stencil(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn derivative_of_laplacian() {
        let l = TrigSymbol::<f64>::laplacian();
        assert!((l.derivative_at(0.0, 2).unwrap() - 2.0).abs() < 1e-15);
        assert!((l.derivative_at(0.7, 1).unwrap() - 2.0 * 0.7f64.sin()).abs() < 1e-15);
    }
}
