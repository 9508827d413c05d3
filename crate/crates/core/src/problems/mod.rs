//! Test problems: biharmonic finite differences and spline collocation of
//! the Laplacian.

pub mod biharmonic;
pub mod bspline;
pub mod iga;

use crate::linalg::StructuredOperator;
use crate::scalar::Scalar;
use crate::trig::TrigSymbol;

pub use biharmonic::biharmonic_problem;
pub use bspline::{cardinal_bspline, BSplineBasis};
pub use iga::{
    iga_laplacian_problem, iga_matrix, iga_stencil_symbol, iga_symbol, iga_symbol_truncated,
    intervals_for_dim, IGA_SYMBOL_TERMS,
};

/// A linear system `A x = b` with known solution.
#[derive(Clone, Debug)]
pub struct ProblemInstance<T: Scalar> {
    pub a: StructuredOperator<T>,
    pub b: Vec<T>,
    pub x_exact: Vec<T>,
    /// Generating symbol of the Toeplitz part, when there is one.
    pub symbol: Option<TrigSymbol<T>>,
    pub description: String,
}
