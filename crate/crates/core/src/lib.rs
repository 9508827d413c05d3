//! Multigrid solvers for symmetric positive definite circulant and Toeplitz
//! systems whose grid transfer operators come from subdivision symbols.
//!
//! The crate is organised bottom-up:
//!
//! * [`symbol`] and [`laurent`]: subdivision masks, binary and ternary primal
//!   pseudo-splines, evaluation of symbols and their derivatives.
//! * [`trig`] and [`analysis`]: real trigonometric polynomials, zero orders,
//!   polynomial generation, the Galerkin coarse symbol and the convergence
//!   certificates for two-grid and V-cycle methods.
//! * [`linalg`]: circulant, banded Toeplitz, banded and dense operators, grid
//!   transfers and Galerkin coarsening.
//! * [`multigrid`]: smoothers, the two-grid method and the recursive cycle.
//! * [`problems`]: the biharmonic finite-difference and the isogeometric
//!   collocation test problems.
//! * [`bench`]: experiment descriptions and CSV output used by the CLI.
//!
//! All numerical types are generic over [`Scalar`] (`f32` or `f64`); masks
//! are constructed in exact rational arithmetic. The aliases below fix the
//! scalar to `f64`.

pub mod analysis;
pub mod bench;
mod cosine;
pub mod error;
pub mod laurent;
pub mod linalg;
pub mod multigrid;
pub mod problems;
pub mod scalar;
pub mod symbol;
pub mod trig;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use analysis::{CertificationKind, CertificationReport, CohenReport, ZeroOrderReport};
pub use laurent::LaurentPoly;
pub use linalg::{BandMatrix, CutVariant, DenseMatrix, GridTransfer, StructuredOperator};
pub use multigrid::{MgHierarchy, SmootherConfig, SmootherKind, SolveReport};
pub use problems::{BSplineBasis, ProblemInstance};
pub use symbol::{RationalMask, SubdivisionSymbol};
pub use trig::TrigSymbol;

pub type Symbol = SubdivisionSymbol<f64>;
pub type Trig = TrigSymbol<f64>;
pub type Operator = StructuredOperator<f64>;
pub type Transfer = GridTransfer<f64>;
pub type Hierarchy = MgHierarchy<f64>;
pub type Report = SolveReport<f64>;
pub type Problem = ProblemInstance<f64>;
pub type Dense = DenseMatrix<f64>;
pub type Band = BandMatrix<f64>;

pub type Symbol32 = SubdivisionSymbol<f32>;
pub type Operator32 = StructuredOperator<f32>;
