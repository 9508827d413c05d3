//! General banded matrices, used for Galerkin products of banded operators
//! and for the collocation matrices.

use crate::error::{Error, Result};
use crate::linalg::dense::DenseMatrix;
use crate::scalar::Scalar;

/// Square matrix with `lower` sub- and `upper` superdiagonals. Row `i`
/// stores columns `i - lower ..= i + upper`.
#[derive(Clone, Debug, PartialEq)]
pub struct BandMatrix<T> {
    n: usize,
    lower: usize,
    upper: usize,
    data: Vec<T>,
}

impl<T: Scalar> BandMatrix<T> {
    pub fn zeros(n: usize, lower: usize, upper: usize) -> Self {
        Self {
            n,
            lower,
            upper,
            data: vec![T::zero(); n * (lower + upper + 1)],
        }
    }

    /// Builds the narrowest band holding every `(row, col, value)` triple;
    /// repeated positions are summed.
    pub fn from_triplets(n: usize, entries: &[(usize, usize, T)]) -> Result<Self> {
        let mut lower = 0;
        let mut upper = 0;
        for &(i, j, _) in entries {
            if i >= n || j >= n {
                return Err(Error::IndexOutOfRange {
                    index: i.max(j),
                    len: n,
                });
            }
            if i > j {
                lower = lower.max(i - j);
            } else {
                upper = upper.max(j - i);
            }
        }
        let mut m = Self::zeros(n, lower, upper);
        for &(i, j, v) in entries {
            let k = m.slot(i, j).expect("inside computed band");
            m.data[k] = m.data[k] + v;
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    fn width(&self) -> usize {
        self.lower + self.upper + 1
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.n || j >= self.n || j + self.lower < i || j > i + self.upper {
            return None;
        }
        Some(i * self.width() + j + self.lower - i)
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.slot(i, j).map_or_else(T::zero, |k| self.data[k])
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) -> Result<()> {
        match self.slot(i, j) {
            Some(k) => {
                self.data[k] = v;
                Ok(())
            }
            None => Err(Error::IndexOutOfRange {
                index: i.max(j),
                len: self.n,
            }),
        }
    }

    /// Column range stored for row `i`.
    #[inline]
    pub fn row_range(&self, i: usize) -> std::ops::Range<usize> {
        i.saturating_sub(self.lower)..(i + self.upper + 1).min(self.n)
    }

    #[inline]
    pub fn for_each_in_row(&self, i: usize, mut f: impl FnMut(usize, T)) {
        let base = i * self.width() + self.lower;
        for j in self.row_range(i) {
            f(j, self.data[base + j - i]);
        }
    }

    #[inline]
    pub fn for_each_in_col(&self, j: usize, mut f: impl FnMut(usize, T)) {
        let lo = j.saturating_sub(self.upper);
        let hi = (j + self.lower + 1).min(self.n);
        for i in lo..hi {
            f(i, self.data[i * self.width() + self.lower + j - i]);
        }
    }

    pub fn matvec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let mut y = vec![T::zero(); self.n];
        for (i, yi) in y.iter_mut().enumerate() {
            let mut s = T::zero();
            self.for_each_in_row(i, |j, a| s = s + a * x[j]);
            *yi = s;
        }
        Ok(y)
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let mut d = DenseMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            self.for_each_in_row(i, |j, a| d.set(i, j, a));
        }
        d
    }
}
