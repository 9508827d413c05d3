//! Structured matrices, grid transfers and Galerkin coarsening.

pub mod banded;
pub mod dense;
pub mod operator;
pub mod transfer;

pub use banded::BandMatrix;
pub use dense::{DenseMatrix, DenseSolver};
pub use operator::{Circulant, StructuredOperator};
pub use transfer::{
    downsample, galerkin_coarsen, packaging_check, upsample, CutVariant, GridTransfer,
};
