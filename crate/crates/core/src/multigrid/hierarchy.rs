//! Galerkin hierarchies and the recursive cycle.

use crate::error::{Error, Result};
use crate::linalg::{galerkin_coarsen, CutVariant, DenseSolver, GridTransfer, StructuredOperator};
use crate::multigrid::smoother::{smooth, SmootherConfig};
use crate::scalar::Scalar;
use crate::symbol::SubdivisionSymbol;

#[derive(Clone, Debug)]
pub struct Level<T: Scalar> {
    pub op: StructuredOperator<T>,
    /// Transfer to the next coarser level; `None` on the coarsest.
    pub transfer: Option<GridTransfer<T>>,
}

#[derive(Clone, Debug)]
pub struct MgHierarchy<T: Scalar> {
    levels: Vec<Level<T>>,
    coarse_solver: DenseSolver<T>,
    arity: usize,
    coarsest_dim: usize,
    cycles: usize,
}

/// Coarsens `a0` with transfers built from `p` until the dimension is at
/// most `n_min`, then factors the coarsest operator. `s = 1` gives the
/// V-cycle and `s = 2` the W-cycle.
pub fn build_hierarchy<T: Scalar>(
    a0: StructuredOperator<T>,
    p: &SubdivisionSymbol<T>,
    variant: CutVariant,
    n_min: usize,
    s: usize,
) -> Result<MgHierarchy<T>> {
    if s == 0 {
        return Err(Error::InvalidParameter(
            "recursion count s must be at least 1".into(),
        ));
    }
    if n_min == 0 {
        return Err(Error::InvalidParameter(
            "coarsest dimension must be positive".into(),
        ));
    }
    let mut levels = Vec::new();
    let mut op = a0;
    while op.dim() > n_min {
        let transfer = GridTransfer::new(p.clone(), op.dim(), variant)?;
        let coarse = galerkin_coarsen(&op, &transfer)?;
        levels.push(Level {
            op,
            transfer: Some(transfer),
        });
        op = coarse;
    }
    let coarse_solver = DenseSolver::factor(&op.to_dense())?;
    levels.push(Level { op, transfer: None });
    log::debug!(
        "hierarchy dims {:?}",
        levels.iter().map(|l| l.op.dim()).collect::<Vec<_>>()
    );
    Ok(MgHierarchy {
        levels,
        coarse_solver,
        arity: p.arity(),
        coarsest_dim: n_min,
        cycles: s,
    })
}

impl<T: Scalar> MgHierarchy<T> {
    pub fn levels(&self) -> &[Level<T>] {
        &self.levels
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.op.dim()).collect()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coarsest_dim(&self) -> usize {
        self.coarsest_dim
    }

    pub fn cycles(&self) -> usize {
        self.cycles
    }

    pub fn finest(&self) -> &StructuredOperator<T> {
        &self.levels[0].op
    }

    /// One outer iteration on the finest level, updating `x` in place.
    pub fn cycle(
        &self,
        x: &mut Vec<T>,
        b: &[T],
        pre: &SmootherConfig,
        post: &SmootherConfig,
    ) -> Result<()> {
        self.cycle_at(0, x, b, pre, post)
    }

    fn cycle_at(
        &self,
        j: usize,
        x: &mut Vec<T>,
        b: &[T],
        pre: &SmootherConfig,
        post: &SmootherConfig,
    ) -> Result<()> {
        let level = &self.levels[j];
        let Some(transfer) = &level.transfer else {
            *x = self.coarse_solver.solve(b)?;
            return Ok(());
        };
        smooth(&level.op, x, b, pre)?;
        let r = level.op.residual(b, x)?;
        let rc = transfer.restrict(&r)?;
        let mut e = vec![T::zero(); transfer.coarse_dim()];
        for _ in 0..self.cycles {
            self.cycle_at(j + 1, &mut e, &rc, pre, post)?;
        }
        let correction = transfer.prolong(&e)?;
        for (xi, ci) in x.iter_mut().zip(correction) {
            *xi = *xi + ci;
        }
        smooth(&level.op, x, b, post)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trig::TrigSymbol;

    #[test]
    fn dimension_chains() {
        let p = SubdivisionSymbol::<f64>::binary_pseudo_spline(2, 1).unwrap();
        let a = StructuredOperator::toeplitz(TrigSymbol::biharmonic(), 31).unwrap();
        let h = build_hierarchy(a, &p, CutVariant::Dirichlet, 3, 1).unwrap();
        assert_eq!(h.dims(), vec![31, 15, 7, 3]);

        let t = SubdivisionSymbol::<f64>::ternary_pseudo_spline(3, 3).unwrap();
        let a = StructuredOperator::circulant(TrigSymbol::constant(1.0), 81).unwrap();
        let h = build_hierarchy(a, &t, CutVariant::Circulant, 9, 1).unwrap();
        assert_eq!(h.dims(), vec![81, 27, 9]);

        let a = StructuredOperator::toeplitz(TrigSymbol::biharmonic(), 10).unwrap();
        assert!(matches!(
            build_hierarchy(a, &p, CutVariant::Dirichlet, 3, 1),
            Err(Error::IncompatibleDimension { .. })
        ));
    }
}
