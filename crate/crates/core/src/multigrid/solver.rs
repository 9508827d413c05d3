//! Two-grid and multigrid solve loops and their reports.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::linalg::{galerkin_coarsen, DenseSolver, GridTransfer, StructuredOperator};
use crate::multigrid::hierarchy::MgHierarchy;
use crate::multigrid::smoother::{smooth, SmootherConfig};
use crate::scalar::{norm2, Scalar};

#[derive(Clone, Debug)]
pub struct SolveReport<T> {
    pub solution: Vec<T>,
    pub iterations: usize,
    /// `‖r_k‖₂ / ‖r_0‖₂` for `k = 0..=iterations`, starting at 1.
    pub residual_history: Vec<T>,
    /// `None` when no iteration was needed.
    pub conv_rate: Option<T>,
    pub converged: bool,
    pub wall_time: Duration,
}

impl<T: Scalar> SolveReport<T> {
    /// `problem,symbol,n,g,iterations,conv_rate,converged,wall_time_s`
    pub fn csv_row(&self, problem: &str, symbol: &str, n: usize, g: usize) -> String {
        let rate = self
            .conv_rate
            .map(|r| format!("{:.4}", r.to_f64_lossy()))
            .unwrap_or_default();
        format!(
            "{problem},{symbol},{n},{g},{},{rate},{},{:.6}",
            self.iterations,
            self.converged,
            self.wall_time.as_secs_f64()
        )
    }
}

/// `(‖r_s‖ / ‖r_0‖)^{1/s}`, the geometric mean of the residual reductions.
pub fn conv_rate<T: Scalar>(history: &[T]) -> Result<T> {
    if history.len() < 2 {
        return Err(Error::TooFewIterations(history.len()));
    }
    let s = history.len() - 1;
    Ok((history[s] / history[0]).powf(T::one() / T::of_usize(s)))
}

fn check_tolerance(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must lie in (0, 1), got {tol}"
        )));
    }
    Ok(())
}

fn iterate<T: Scalar>(
    a: &StructuredOperator<T>,
    b: &[T],
    tol: f64,
    max_iter: usize,
    mut step: impl FnMut(&mut Vec<T>) -> Result<()>,
) -> Result<SolveReport<T>> {
    check_tolerance(tol)?;
    if b.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.len(),
        });
    }
    let start = Instant::now();
    let mut x = vec![T::zero(); a.dim()];
    let r0 = norm2(b);
    let mut history = vec![T::one()];
    if r0.is_zero() {
        return Ok(SolveReport {
            solution: x,
            iterations: 0,
            residual_history: history,
            conv_rate: None,
            converged: true,
            wall_time: start.elapsed(),
        });
    }
    let tol = T::of(tol);
    let mut converged = false;
    for _ in 0..max_iter {
        step(&mut x)?;
        let rel = norm2(&a.residual(b, &x)?) / r0;
        history.push(rel);
        if !rel.is_finite() {
            log::warn!("iteration diverged after {} steps", history.len() - 1);
            break;
        }
        if rel < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        log::info!(
            "stopped after {} iterations without reaching the tolerance",
            history.len() - 1
        );
    }
    Ok(SolveReport {
        solution: x,
        iterations: history.len() - 1,
        conv_rate: conv_rate(&history).ok(),
        residual_history: history,
        converged,
        wall_time: start.elapsed(),
    })
}

/// The two-grid method with an exact coarse solve.
#[derive(Clone, Debug)]
pub struct TwoGrid<T: Scalar> {
    op: StructuredOperator<T>,
    transfer: GridTransfer<T>,
    coarse_op: StructuredOperator<T>,
    coarse_solver: DenseSolver<T>,
}

impl<T: Scalar> TwoGrid<T> {
    pub fn new(op: StructuredOperator<T>, transfer: GridTransfer<T>) -> Result<Self> {
        let coarse_op = galerkin_coarsen(&op, &transfer)?;
        let coarse_solver = DenseSolver::factor(&coarse_op.to_dense())?;
        Ok(Self {
            op,
            transfer,
            coarse_op,
            coarse_solver,
        })
    }

    pub fn coarse_op(&self) -> &StructuredOperator<T> {
        &self.coarse_op
    }

    pub fn step(
        &self,
        x: &mut [T],
        b: &[T],
        pre: &SmootherConfig,
        post: &SmootherConfig,
    ) -> Result<()> {
        smooth(&self.op, x, b, pre)?;
        let r = self.op.residual(b, x)?;
        let rc = self.transfer.restrict(&r)?;
        let e = self.coarse_solver.solve(&rc)?;
        let correction = self.transfer.prolong(&e)?;
        for (xi, ci) in x.iter_mut().zip(correction) {
            *xi = *xi + ci;
        }
        smooth(&self.op, x, b, post)
    }

    /// `x ← CGC x` for the homogeneous problem: `x - P (Pᴴ A P)⁻¹ Pᴴ A x`.
    pub fn coarse_correction(&self, x: &[T]) -> Result<Vec<T>> {
        let ax = self.op.matvec(x)?;
        let e = self.coarse_solver.solve(&self.transfer.restrict(&ax)?)?;
        let pe = self.transfer.prolong(&e)?;
        Ok(x.iter().zip(pe).map(|(&a, b)| a - b).collect())
    }
}

/// Two-grid iteration from the zero vector until `‖r_k‖/‖r_0‖ < tol`.
pub fn tgm_solve<T: Scalar>(
    a: &StructuredOperator<T>,
    b: &[T],
    p: &GridTransfer<T>,
    pre: &SmootherConfig,
    post: &SmootherConfig,
    tol: f64,
    max_iter: usize,
) -> Result<SolveReport<T>> {
    let tg = TwoGrid::new(a.clone(), p.clone())?;
    iterate(a, b, tol, max_iter, |x| tg.step(x, b, pre, post))
}

/// Multigrid iteration from the zero vector until `‖r_k‖/‖r_0‖ < tol`.
pub fn mgm_solve<T: Scalar>(
    h: &MgHierarchy<T>,
    b: &[T],
    pre: &SmootherConfig,
    post: &SmootherConfig,
    tol: f64,
    max_iter: usize,
) -> Result<SolveReport<T>> {
    iterate(h.finest(), b, tol, max_iter, |x| h.cycle(x, b, pre, post))
}
