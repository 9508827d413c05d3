//! Down/upsampling, subdivision-based grid transfers and Galerkin coarsening.

use num_complex::Complex;

use crate::analysis::coarse_symbol;
use crate::error::{Error, Result};
use crate::linalg::banded::BandMatrix;
use crate::linalg::dense::DenseMatrix;
use crate::linalg::operator::StructuredOperator;
use crate::scalar::Scalar;
use crate::symbol::SubdivisionSymbol;

/// How the coarse grid sits inside the fine one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutVariant {
    /// Periodic grids, `n_{j+1} = n_j / g`, keeping indices `0, g, 2g, …`.
    Circulant,
    /// Dirichlet grids, `n_{j+1} = (n_j + 1)/g - 1`, keeping `g-1, 2g-1, …`.
    Dirichlet,
}

impl CutVariant {
    pub fn coarse_dim(self, n: usize, g: usize) -> Result<usize> {
        let coarse = match self {
            Self::Circulant => {
                if !n.is_multiple_of(g) {
                    return Err(Error::IncompatibleDimension {
                        n,
                        g,
                        reason: "g must divide n",
                    });
                }
                n / g
            }
            Self::Dirichlet => {
                if !(n + 1).is_multiple_of(g) {
                    return Err(Error::IncompatibleDimension {
                        n,
                        g,
                        reason: "g must divide n + 1",
                    });
                }
                ((n + 1) / g).saturating_sub(1)
            }
        };
        if coarse == 0 {
            return Err(Error::IncompatibleDimension {
                n,
                g,
                reason: "coarse grid would be empty",
            });
        }
        Ok(coarse)
    }

    /// Fine index of coarse point `k`.
    #[inline]
    pub fn fine_index(self, k: usize, g: usize) -> usize {
        match self {
            Self::Circulant => g * k,
            Self::Dirichlet => g * (k + 1) - 1,
        }
    }
}

fn sampling_dim(n: usize, g: usize, variant: CutVariant) -> Result<usize> {
    variant
        .coarse_dim(n, g)
        .map_err(|e| Error::BadDimension(e.to_string()))
}

pub fn downsample<T: Scalar>(v: &[T], g: usize, variant: CutVariant) -> Result<Vec<T>> {
    let m = sampling_dim(v.len(), g, variant)?;
    Ok((0..m).map(|k| v[variant.fine_index(k, g)]).collect())
}

/// Adjoint of [`downsample`]: zeros except at the kept indices.
pub fn upsample<T: Scalar>(
    v: &[T],
    g: usize,
    variant: CutVariant,
    target_dim: usize,
) -> Result<Vec<T>> {
    let m = sampling_dim(target_dim, g, variant)?;
    if m != v.len() {
        return Err(Error::BadDimension(format!(
            "{} coarse values do not fit fine dimension {target_dim}",
            v.len()
        )));
    }
    let mut out = vec![T::zero(); target_dim];
    for (k, &x) in v.iter().enumerate() {
        out[variant.fine_index(k, g)] = x;
    }
    Ok(out)
}

/// `P = T_n(p) Z̄ᵀ` (Dirichlet) or `P = C_n(p) Kᵀ` (circulant): upsampling
/// followed by convolution with the mask, one step of subdivision.
#[derive(Clone, Debug)]
pub struct GridTransfer<T> {
    symbol: SubdivisionSymbol<T>,
    fine_dim: usize,
    coarse_dim: usize,
    variant: CutVariant,
}

impl<T: Scalar> GridTransfer<T> {
    pub fn new(symbol: SubdivisionSymbol<T>, fine_dim: usize, variant: CutVariant) -> Result<Self> {
        let coarse_dim = variant.coarse_dim(fine_dim, symbol.arity())?;
        Ok(Self {
            symbol,
            fine_dim,
            coarse_dim,
            variant,
        })
    }

    pub fn symbol(&self) -> &SubdivisionSymbol<T> {
        &self.symbol
    }

    pub fn fine_dim(&self) -> usize {
        self.fine_dim
    }

    pub fn coarse_dim(&self) -> usize {
        self.coarse_dim
    }

    pub fn variant(&self) -> CutVariant {
        self.variant
    }

    pub fn arity(&self) -> usize {
        self.symbol.arity()
    }

    /// Calls `f(fine_index, p_α)` for each stored entry of column `k`.
    #[inline]
    fn visit_column(&self, k: usize, mut f: impl FnMut(usize, T)) {
        let n = self.fine_dim as i64;
        let c = self.variant.fine_index(k, self.arity()) as i64;
        let half = self.symbol.half();
        let d = half.len() as i64 - 1;
        for a in -d..=d {
            let v = half[a.unsigned_abs() as usize];
            let i = c + a;
            match self.variant {
                CutVariant::Dirichlet => {
                    if (0..n).contains(&i) {
                        f(i as usize, v);
                    }
                }
                CutVariant::Circulant => f(i.rem_euclid(n) as usize, v),
            }
        }
    }

    /// Nonzero pattern of column `k` of `P`; circulant wrap-around entries
    /// that land on the same row are summed.
    pub fn column(&self, k: usize) -> Vec<(usize, T)> {
        let mut out: Vec<(usize, T)> = Vec::new();
        self.visit_column(k, |i, v| match out.iter_mut().find(|(j, _)| *j == i) {
            Some(e) => e.1 = e.1 + v,
            None => out.push((i, v)),
        });
        out
    }

    pub fn prolong(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.coarse_dim {
            return Err(Error::DimensionMismatch {
                expected: self.coarse_dim,
                got: v.len(),
            });
        }
        let mut out = vec![T::zero(); self.fine_dim];
        for (k, &x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            self.visit_column(k, |i, p| out[i] = out[i] + p * x);
        }
        Ok(out)
    }

    pub fn restrict(&self, u: &[T]) -> Result<Vec<T>> {
        if u.len() != self.fine_dim {
            return Err(Error::DimensionMismatch {
                expected: self.fine_dim,
                got: u.len(),
            });
        }
        Ok((0..self.coarse_dim)
            .map(|k| {
                let mut s = T::zero();
                self.visit_column(k, |i, p| s = s + p * u[i]);
                s
            })
            .collect())
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let mut m = DenseMatrix::zeros(self.fine_dim, self.coarse_dim);
        for k in 0..self.coarse_dim {
            self.visit_column(k, |i, v| m.add_to(i, k, v));
        }
        m
    }
}

/// `Pᴴ A P`. A circulant operator with a circulant cut stays symbol-based
/// (its symbol is [`coarse_symbol`]); every other combination is formed as a
/// sparse triple product, banded when `A` is banded and dense otherwise.
pub fn galerkin_coarsen<T: Scalar>(
    a: &StructuredOperator<T>,
    p: &GridTransfer<T>,
) -> Result<StructuredOperator<T>> {
    if a.dim() != p.fine_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.fine_dim(),
            got: a.dim(),
        });
    }
    if let (StructuredOperator::Circulant(c), CutVariant::Circulant) = (a, p.variant()) {
        return StructuredOperator::circulant(
            coarse_symbol(c.symbol(), p.symbol()),
            p.coarse_dim(),
        );
    }

    let n = p.fine_dim();
    let m = p.coarse_dim();
    let columns: Vec<Vec<(usize, T)>> = (0..m).map(|k| p.column(k)).collect();
    let mut rows_of: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    for (k, col) in columns.iter().enumerate() {
        for &(i, v) in col {
            rows_of[i].push((k, v));
        }
    }

    let mut fine = vec![T::zero(); n];
    let mut fine_touched = vec![false; n];
    let mut fine_list: Vec<usize> = Vec::new();
    let mut coarse = vec![T::zero(); m];
    let mut coarse_touched = vec![false; m];
    let mut coarse_list: Vec<usize> = Vec::new();
    let mut triplets: Vec<(usize, usize, T)> = Vec::new();

    for (k, col) in columns.iter().enumerate() {
        for &(j, pv) in col {
            a.for_each_in_col(j, |i, av| {
                if !fine_touched[i] {
                    fine_touched[i] = true;
                    fine_list.push(i);
                }
                fine[i] = fine[i] + av * pv;
            });
        }
        for &i in &fine_list {
            let y = fine[i];
            for &(r, pv) in &rows_of[i] {
                if !coarse_touched[r] {
                    coarse_touched[r] = true;
                    coarse_list.push(r);
                }
                coarse[r] = coarse[r] + pv * y;
            }
            fine[i] = T::zero();
            fine_touched[i] = false;
        }
        fine_list.clear();
        for &r in &coarse_list {
            if !coarse[r].is_zero() {
                triplets.push((r, k, coarse[r]));
            }
            coarse[r] = T::zero();
            coarse_touched[r] = false;
        }
        coarse_list.clear();
    }

    match a {
        StructuredOperator::ToeplitzBanded { .. } | StructuredOperator::Banded(_) => Ok(
            StructuredOperator::Banded(BandMatrix::from_triplets(m, &triplets)?),
        ),
        _ => {
            let mut d = DenseMatrix::zeros(m, m);
            for (i, j, v) in triplets {
                d.add_to(i, j, v);
            }
            Ok(StructuredOperator::Dense(d))
        }
    }
}

/// Largest entrywise deviation between `K_{n,g} F_n` and
/// `(1/√g) [F_{n/g} | … | F_{n/g}]`, with `F_n` the unitary Fourier matrix.
pub fn packaging_check(n: usize, g: usize) -> Result<f64> {
    if g < 2 || n == 0 || !n.is_multiple_of(g) {
        return Err(Error::BadDimension(format!(
            "packaging needs g ≥ 2 dividing n, got n={n}, g={g}"
        )));
    }
    let m = n / g;
    let fourier = |size: usize, r: usize, c: usize| -> Complex<f64> {
        let angle = -2.0 * std::f64::consts::PI * ((r * c) % size) as f64 / size as f64;
        Complex::from_polar(1.0 / (size as f64).sqrt(), angle)
    };
    let mut worst = 0.0f64;
    for r in 0..m {
        for c in 0..n {
            let lhs = fourier(n, CutVariant::Circulant.fine_index(r, g), c);
            let rhs = fourier(m, r, c % m) / (g as f64).sqrt();
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trig::TrigSymbol;

    fn seq(n: usize) -> Vec<f64> {
        (1..=n).map(|i| i as f64).collect()
    }

    #[test]
    fn sampling_examples() {
        assert_eq!(
            downsample(&seq(6), 2, CutVariant::Circulant).unwrap(),
            vec![1.0, 3.0, 5.0]
        );
        assert_eq!(
            downsample(&seq(7), 2, CutVariant::Dirichlet).unwrap(),
            vec![2.0, 4.0, 6.0]
        );
        assert_eq!(
            downsample(&seq(8), 3, CutVariant::Dirichlet).unwrap(),
            vec![3.0, 6.0]
        );
        assert_eq!(
            upsample(&[1.0, 2.0], 2, CutVariant::Circulant, 4).unwrap(),
            vec![1.0, 0.0, 2.0, 0.0]
        );
        assert_eq!(
            upsample(&[1.0, 2.0, 3.0], 2, CutVariant::Dirichlet, 7).unwrap(),
            vec![0.0, 1.0, 0.0, 2.0, 0.0, 3.0, 0.0]
        );
        assert!(matches!(
            downsample(&seq(7), 2, CutVariant::Circulant),
            Err(Error::BadDimension(_))
        ));
        assert!(matches!(
            upsample(&[1.0], 2, CutVariant::Dirichlet, 7),
            Err(Error::BadDimension(_))
        ));
    }

    #[test]
    fn linear_bspline_column_wraps() {
        let p = SubdivisionSymbol::<f64>::binary_pseudo_spline(1, 0).unwrap();
        let t = GridTransfer::new(p, 8, CutVariant::Circulant).unwrap();
        let mut e = vec![0.0; 4];
        e[0] = 1.0;
        assert_eq!(
            t.prolong(&e).unwrap(),
            vec![1.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5]
        );
    }

    #[test]
    fn ternary_hat_columns() {
        let p = SubdivisionSymbol::<f64>::ternary_pseudo_spline(1, 1).unwrap();
        let t = GridTransfer::new(p, 8, CutVariant::Dirichlet).unwrap();
        let d = t.to_dense();
        assert_eq!((d.rows(), d.cols()), (8, 2));
        let hat = [1.0, 2.0, 3.0, 2.0, 1.0].map(|v| v / 3.0);
        for k in 0..2 {
            let c = 3 * k + 2;
            for i in 0..8 {
                let off = i as i64 - c as i64;
                let want = if off.abs() <= 2 {
                    hat[(off + 2) as usize]
                } else {
                    0.0
                };
                assert!((d.get(i, k) - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn transfer_dimension_checks() {
        let p = SubdivisionSymbol::<f64>::binary_pseudo_spline(1, 0).unwrap();
        assert!(matches!(
            GridTransfer::new(p.clone(), 10, CutVariant::Dirichlet),
            Err(Error::IncompatibleDimension { .. })
        ));
        let t = GridTransfer::new(p, 7, CutVariant::Dirichlet).unwrap();
        assert!(matches!(
            t.prolong(&[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            t.restrict(&[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn galerkin_examples() {
        let p = SubdivisionSymbol::<f64>::binary_pseudo_spline(1, 0).unwrap();
        let a = StructuredOperator::circulant(TrigSymbol::laplacian(), 8).unwrap();
        let t = GridTransfer::new(p.clone(), 8, CutVariant::Circulant).unwrap();
        let c = galerkin_coarsen(&a, &t).unwrap();
        assert_eq!(c.dim(), 4);
        let s = c.symbol().unwrap();
        assert!((s.coefficient(0) - 1.0).abs() < 1e-14 && (s.coefficient(1) + 0.5).abs() < 1e-14);

        let id = StructuredOperator::dense(DenseMatrix::identity(8)).unwrap();
        let g = galerkin_coarsen(&id, &t).unwrap().to_dense();
        let pd = t.to_dense();
        assert!(g.max_abs_diff(&pd.transpose().matmul(&pd).unwrap()) < 1e-15);

        let p21 = SubdivisionSymbol::<f64>::binary_pseudo_spline(2, 1).unwrap();
        let a = StructuredOperator::toeplitz(TrigSymbol::biharmonic(), 15).unwrap();
        let t = GridTransfer::new(p21, 15, CutVariant::Dirichlet).unwrap();
        let g = galerkin_coarsen(&a, &t).unwrap();
        assert_eq!(g.kind(), "banded");
        let pd = t.to_dense();
        let oracle = pd
            .transpose()
            .matmul(&a.to_dense())
            .unwrap()
            .matmul(&pd)
            .unwrap();
        let gd = g.to_dense();
        assert_eq!(gd.rows(), 7);
        assert!(gd.max_abs_diff(&oracle) < 1e-12);
        assert!(gd.max_abs_diff(&gd.transpose()) < 1e-12);
    }

    #[test]
    fn packaging_examples() {
        for (n, g) in [(4, 2), (9, 3), (6, 2)] {
            assert!(packaging_check(n, g).unwrap() <= 1e-12);
        }
        assert!(packaging_check(7, 2).is_err());
    }
}
