//! Structured operators with a common matrix-vector contract.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::linalg::banded::BandMatrix;
use crate::linalg::dense::DenseMatrix;
use crate::scalar::Scalar;
use crate::trig::TrigSymbol;

/// `C_n(f)`: applied through the FFT, with eigenvalues `f(2πr/n)`.
#[derive(Clone)]
pub struct Circulant<T: Scalar> {
    symbol: TrigSymbol<T>,
    n: usize,
    /// `(offset, value)`: row `i` holds `value` at column `(i + offset) mod n`.
    wrapped: Vec<(usize, T)>,
    eigenvalues: Vec<T>,
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
}

impl<T: Scalar> Circulant<T> {
    pub fn new(symbol: TrigSymbol<T>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadDimension(
                "circulant dimension must be positive".into(),
            ));
        }
        let mut folded = vec![T::zero(); n];
        let d = symbol.degree() as i64;
        for l in -d..=d {
            let r = l.rem_euclid(n as i64) as usize;
            folded[r] = folded[r] + symbol.coefficient(l);
        }
        let wrapped = folded
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        let two_pi = T::of(2.0) * T::PI();
        let eigenvalues = (0..n)
            .map(|r| symbol.eval(two_pi * T::of_usize(r) / T::of_usize(n)))
            .collect();
        let mut planner = FftPlanner::new();
        Ok(Self {
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            symbol,
            n,
            wrapped,
            eigenvalues,
        })
    }

    pub fn symbol(&self) -> &TrigSymbol<T> {
        &self.symbol
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    fn matvec(&self, x: &[T]) -> Vec<T> {
        let mut buf: Vec<Complex<T>> = x.iter().map(|&v| Complex::new(v, T::zero())).collect();
        self.forward.process(&mut buf);
        for (c, &l) in buf.iter_mut().zip(&self.eigenvalues) {
            *c = *c * l;
        }
        self.inverse.process(&mut buf);
        let scale = T::one() / T::of_usize(self.n);
        buf.iter().map(|c| c.re * scale).collect()
    }

    fn get(&self, i: usize, j: usize) -> T {
        let off = (j + self.n - i) % self.n;
        self.wrapped
            .iter()
            .find(|(o, _)| *o == off)
            .map_or_else(T::zero, |&(_, v)| v)
    }
}

impl<T: Scalar> fmt::Debug for Circulant<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Circulant")
            .field("symbol", &self.symbol)
            .field("n", &self.n)
            .finish()
    }
}

#[derive(Clone, Debug)]
pub enum StructuredOperator<T: Scalar> {
    Circulant(Circulant<T>),
    /// `T_n(f)`: entries `a_{r-s}` for `|r - s| ≤ deg f`.
    ToeplitzBanded {
        symbol: TrigSymbol<T>,
        n: usize,
    },
    Banded(BandMatrix<T>),
    Dense(DenseMatrix<T>),
}

impl<T: Scalar> StructuredOperator<T> {
    pub fn circulant(symbol: TrigSymbol<T>, n: usize) -> Result<Self> {
        Ok(Self::Circulant(Circulant::new(symbol, n)?))
    }

    pub fn toeplitz(symbol: TrigSymbol<T>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadDimension(
                "Toeplitz dimension must be positive".into(),
            ));
        }
        Ok(Self::ToeplitzBanded { symbol, n })
    }

    pub fn dense(m: DenseMatrix<T>) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                got: m.cols(),
            });
        }
        Ok(Self::Dense(m))
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Circulant(c) => c.n,
            Self::ToeplitzBanded { n, .. } => *n,
            Self::Banded(b) => b.dim(),
            Self::Dense(d) => d.rows(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Circulant(_) => "circulant",
            Self::ToeplitzBanded { .. } => "toeplitz",
            Self::Banded(_) => "banded",
            Self::Dense(_) => "dense",
        }
    }

    /// Generating symbol for the circulant and Toeplitz variants.
    pub fn symbol(&self) -> Option<&TrigSymbol<T>> {
        match self {
            Self::Circulant(c) => Some(&c.symbol),
            Self::ToeplitzBanded { symbol, .. } => Some(symbol),
            _ => None,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self {
            Self::Circulant(c) => c.get(i, j),
            Self::ToeplitzBanded { symbol, .. } => symbol.coefficient(i as i64 - j as i64),
            Self::Banded(b) => b.get(i, j),
            Self::Dense(d) => d.get(i, j),
        }
    }

    pub fn matvec(&self, x: &[T]) -> Result<Vec<T>> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        match self {
            Self::Circulant(c) => Ok(c.matvec(x)),
            Self::ToeplitzBanded { symbol, .. } => {
                let d = symbol.degree();
                Ok((0..n)
                    .map(|i| {
                        let lo = i.saturating_sub(d);
                        let hi = (i + d + 1).min(n);
                        (lo..hi)
                            .map(|j| symbol.coefficient(i as i64 - j as i64) * x[j])
                            .sum()
                    })
                    .collect())
            }
            Self::Banded(b) => b.matvec(x),
            Self::Dense(m) => m.matvec(x),
        }
    }

    /// `b - A x`
    pub fn residual(&self, b: &[T], x: &[T]) -> Result<Vec<T>> {
        if b.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: b.len(),
            });
        }
        let ax = self.matvec(x)?;
        Ok(b.iter().zip(ax).map(|(&bi, axi)| bi - axi).collect())
    }

    /// Visits the stored entries of row `i`.
    pub fn for_each_in_row(&self, i: usize, mut f: impl FnMut(usize, T)) {
        match self {
            Self::Circulant(c) => {
                for &(o, v) in &c.wrapped {
                    f((i + o) % c.n, v);
                }
            }
            Self::ToeplitzBanded { symbol, n } => {
                let d = symbol.degree();
                for j in i.saturating_sub(d)..(i + d + 1).min(*n) {
                    f(j, symbol.coefficient(i as i64 - j as i64));
                }
            }
            Self::Banded(b) => b.for_each_in_row(i, f),
            Self::Dense(m) => {
                for (j, &v) in m.row(i).iter().enumerate() {
                    f(j, v);
                }
            }
        }
    }

    /// Visits the stored entries of column `j`.
    pub fn for_each_in_col(&self, j: usize, mut f: impl FnMut(usize, T)) {
        match self {
            Self::Circulant(c) => {
                for &(o, v) in &c.wrapped {
                    f((j + c.n - o) % c.n, v);
                }
            }
            Self::ToeplitzBanded { symbol, n } => {
                let d = symbol.degree();
                for i in j.saturating_sub(d)..(j + d + 1).min(*n) {
                    f(i, symbol.coefficient(i as i64 - j as i64));
                }
            }
            Self::Banded(b) => b.for_each_in_col(j, f),
            Self::Dense(m) => {
                for i in 0..m.rows() {
                    f(i, m.get(i, j));
                }
            }
        }
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.dim()).map(|i| self.get(i, i)).collect()
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let n = self.dim();
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            self.for_each_in_row(i, |j, v| m.add_to(i, j, v));
        }
        m
    }

    /// Symmetry within `tol` relative to the largest entry. Circulant and
    /// Toeplitz operators are symmetric by construction.
    pub fn is_symmetric(&self, tol: T) -> bool {
        match self {
            Self::Circulant(_) | Self::ToeplitzBanded { .. } => true,
            Self::Banded(b) => {
                let scale = (0..b.dim()).fold(T::zero(), |m, i| {
                    let mut r = m;
                    b.for_each_in_row(i, |_, v| r = r.max(v.abs()));
                    r
                });
                (0..b.dim()).all(|i| {
                    let mut ok = true;
                    b.for_each_in_row(i, |j, v| ok &= (v - b.get(j, i)).abs() <= tol * scale);
                    ok
                })
            }
            Self::Dense(m) => m.is_symmetric(tol),
        }
    }
}
