//! Stationary iterations used as pre- and post-smoothers.

use crate::error::{Error, Result};
use crate::linalg::StructuredOperator;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SmootherKind {
    /// Forward lexicographic Gauss-Seidel.
    GaussSeidel,
    /// `x += ω D⁻¹ (b - A x)`
    WeightedJacobi(f64),
    /// `x += ω (b - A x)`
    Richardson(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmootherConfig {
    pub kind: SmootherKind,
    /// Number of sweeps; zero skips the smoother.
    pub sweeps: usize,
}

impl SmootherConfig {
    pub fn new(kind: SmootherKind, sweeps: usize) -> Result<Self> {
        let cfg = Self { kind, sweeps };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn gauss_seidel(sweeps: usize) -> Self {
        Self {
            kind: SmootherKind::GaussSeidel,
            sweeps,
        }
    }

    pub fn none() -> Self {
        Self::gauss_seidel(0)
    }

    fn validate(&self) -> Result<()> {
        match self.kind {
            SmootherKind::WeightedJacobi(w) | SmootherKind::Richardson(w)
                if !(w > 0.0 && w.is_finite()) =>
            {
                Err(Error::InvalidParameter(format!(
                    "smoother weight must be positive, got {w}"
                )))
            }
            _ => Ok(()),
        }
    }
}

impl Default for SmootherConfig {
    fn default() -> Self {
        Self::gauss_seidel(1)
    }
}

/// Applies `config.sweeps` steps of the smoother to `x` in place.
pub fn smooth<T: Scalar>(
    a: &StructuredOperator<T>,
    x: &mut [T],
    b: &[T],
    config: &SmootherConfig,
) -> Result<()> {
    config.validate()?;
    let n = a.dim();
    for len in [x.len(), b.len()] {
        if len != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: len,
            });
        }
    }
    for _ in 0..config.sweeps {
        match config.kind {
            SmootherKind::GaussSeidel => {
                for i in 0..n {
                    let mut s = b[i];
                    let mut diag = T::zero();
                    a.for_each_in_row(i, |j, v| {
                        if j == i {
                            diag = diag + v;
                        } else {
                            s = s - v * x[j];
                        }
                    });
                    if diag.is_zero() {
                        return Err(Error::ZeroDiagonal(i));
                    }
                    x[i] = s / diag;
                }
            }
            SmootherKind::WeightedJacobi(w) => {
                let d = a.diagonal();
                if let Some(i) = d.iter().position(|v| v.is_zero()) {
                    return Err(Error::ZeroDiagonal(i));
                }
                let r = a.residual(b, x)?;
                let w = T::of(w);
                for i in 0..n {
                    x[i] = x[i] + w * r[i] / d[i];
                }
            }
            SmootherKind::Richardson(w) => {
                let r = a.residual(b, x)?;
                let w = T::of(w);
                for i in 0..n {
                    x[i] = x[i] + w * r[i];
                }
            }
        }
    }
    Ok(())
}
