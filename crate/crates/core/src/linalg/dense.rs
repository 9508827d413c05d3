//! Row-major dense matrices and the direct solvers used on the coarsest grid.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: r.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = self.data[i * self.cols + j] + v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn matvec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| crate::scalar::dot(self.row(i), x))
            .collect())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.add_to(i, j, a * other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    pub fn max_abs(&self) -> T {
        crate::scalar::max_abs(&self.data)
    }

    /// Largest entrywise difference; infinite when the shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.rows != other.rows || self.cols != other.cols {
            return T::infinity();
        }
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }

    /// `‖A - Aᵀ‖_max ≤ tol · ‖A‖_max`
    pub fn is_symmetric(&self, tol: T) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let scale = self.max_abs();
        (0..self.rows)
            .all(|i| (0..i).all(|j| (self.get(i, j) - self.get(j, i)).abs() <= tol * scale))
    }

    /// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
    /// Returns the eigenvalues and the eigenvectors as columns.
    pub fn symmetric_eigen(&self) -> Result<(Vec<T>, Self)> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut v = Self::identity(n);
        let scale = a.max_abs().max(T::min_positive_value());
        for _sweep in 0..100 {
            let off: T = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a.get(i, j) * a.get(i, j))
                .sum();
            if off.sqrt() <= T::epsilon() * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a.get(p, q);
                    if apq.abs() <= T::min_positive_value() {
                        continue;
                    }
                    let theta = (a.get(q, q) - a.get(p, p)) / (T::of(2.0) * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    let c = T::one() / (t * t + T::one()).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a.get(k, p);
                        let akq = a.get(k, q);
                        a.set(k, p, c * akp - s * akq);
                        a.set(k, q, s * akp + c * akq);
                    }
                    for k in 0..n {
                        let apk = a.get(p, k);
                        let aqk = a.get(q, k);
                        a.set(p, k, c * apk - s * aqk);
                        a.set(q, k, s * apk + c * aqk);
                    }
                    for k in 0..n {
                        let vkp = v.get(k, p);
                        let vkq = v.get(k, q);
                        v.set(k, p, c * vkp - s * vkq);
                        v.set(k, q, s * vkp + c * vkq);
                    }
                }
            }
        }
        Ok(((0..n).map(|i| a.get(i, i)).collect(), v))
    }
}

/// Pivot threshold of the Cholesky factorisation, relative to the largest
/// diagonal entry.
pub const CHOLESKY_PIVOT_TOL: f64 = 1e-14;

/// Exact solver for a small dense system.
#[derive(Clone, Debug)]
pub enum DenseSolver<T> {
    /// Lower factor `L` with `A = L Lᵀ`.
    Cholesky(DenseMatrix<T>),
    /// Packed `L\U` factors and the row permutation.
    Lu {
        lu: DenseMatrix<T>,
        perm: Vec<usize>,
    },
    /// Moore–Penrose inverse, used for semi-definite symmetric matrices.
    PseudoInverse(DenseMatrix<T>),
}

impl<T: Scalar> DenseSolver<T> {
    /// Cholesky for symmetric input, falling back to a pseudo-inverse when the
    /// matrix is only semi-definite; LU with partial pivoting otherwise.
    pub fn factor(a: &DenseMatrix<T>) -> Result<Self> {
        if a.rows() != a.cols() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                got: a.cols(),
            });
        }
        if a.is_symmetric(T::tol(1e-12)) {
            match cholesky(a) {
                Some(l) => Ok(Self::Cholesky(l)),
                None => {
                    log::warn!(
                        "coarse matrix is not positive definite; using a least-squares solve"
                    );
                    pseudo_inverse(a).map(Self::PseudoInverse)
                }
            }
        } else {
            lu(a).map(|(lu, perm)| Self::Lu { lu, perm })
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Cholesky(l) => l.rows(),
            Self::Lu { lu, .. } => lu.rows(),
            Self::PseudoInverse(p) => p.rows(),
        }
    }

    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        let n = self.dim();
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        match self {
            Self::Cholesky(l) => {
                let mut y = b.to_vec();
                for i in 0..n {
                    let s = y[i] - crate::scalar::dot(&l.row(i)[..i], &y[..i]);
                    y[i] = s / l.get(i, i);
                }
                for i in (0..n).rev() {
                    let mut s = y[i];
                    for k in i + 1..n {
                        s = s - l.get(k, i) * y[k];
                    }
                    y[i] = s / l.get(i, i);
                }
                Ok(y)
            }
            Self::Lu { lu, perm } => {
                let mut y: Vec<T> = perm.iter().map(|&p| b[p]).collect();
                for i in 0..n {
                    let s = y[i] - crate::scalar::dot(&lu.row(i)[..i], &y[..i]);
                    y[i] = s;
                }
                for i in (0..n).rev() {
                    let s = y[i] - crate::scalar::dot(&lu.row(i)[i + 1..], &y[i + 1..]);
                    y[i] = s / lu.get(i, i);
                }
                Ok(y)
            }
            Self::PseudoInverse(p) => p.matvec(b),
        }
    }
}

fn cholesky<T: Scalar>(a: &DenseMatrix<T>) -> Option<DenseMatrix<T>> {
    let n = a.rows();
    let dmax = (0..n).fold(T::zero(), |m, i| m.max(a.get(i, i).abs()));
    let tol = T::tol(CHOLESKY_PIVOT_TOL) * dmax;
    let mut l = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let d = a.get(j, j) - l.row(j)[..j].iter().map(|&x| x * x).sum::<T>();
        if !(d > tol) {
            return None;
        }
        let ljj = d.sqrt();
        l.set(j, j, ljj);
        for i in j + 1..n {
            let s = a.get(i, j) - crate::scalar::dot(&l.row(i)[..j], &l.row(j)[..j]);
            l.set(i, j, s / ljj);
        }
    }
    Some(l)
}

fn lu<T: Scalar>(a: &DenseMatrix<T>) -> Result<(DenseMatrix<T>, Vec<usize>)> {
    let n = a.rows();
    let tol = T::tol(1e-14) * a.max_abs();
    let mut m = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (piv, pval) = (k..n)
            .map(|i| (i, m.get(i, k).abs()))
            .fold(
                (k, T::zero()),
                |best, c| if c.1 > best.1 { c } else { best },
            );
        if !(pval > tol) {
            return Err(Error::SingularCoarseMatrix(format!(
                "zero pivot in column {k}"
            )));
        }
        if piv != k {
            for j in 0..n {
                let t = m.get(k, j);
                m.set(k, j, m.get(piv, j));
                m.set(piv, j, t);
            }
            perm.swap(k, piv);
        }
        let d = m.get(k, k);
        for i in k + 1..n {
            let f = m.get(i, k) / d;
            m.set(i, k, f);
            for j in k + 1..n {
                m.add_to(i, j, -f * m.get(k, j));
            }
        }
    }
    Ok((m, perm))
}

fn pseudo_inverse<T: Scalar>(a: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let n = a.rows();
    let (vals, vecs) = a.symmetric_eigen()?;
    let lmax = vals.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
    let cut = T::tol(1e-12) * lmax;
    if !(lmax > T::zero()) {
        return Err(Error::SingularCoarseMatrix("matrix is zero".into()));
    }
    let mut p = DenseMatrix::zeros(n, n);
    for (k, &lam) in vals.iter().enumerate() {
        if lam.abs() <= cut {
            continue;
        }
        for i in 0..n {
            let vi = vecs.get(i, k) / lam;
            for j in 0..n {
                p.add_to(i, j, vi * vecs.get(j, k));
            }
        }
    }
    Ok(p)
}
