//! Smoothers, the two-grid method and the recursive multigrid cycle.

pub mod hierarchy;
pub mod smoother;
pub mod solver;

pub use hierarchy::{build_hierarchy, Level, MgHierarchy};
pub use smoother::{smooth, SmootherConfig, SmootherKind};
pub use solver::{conv_rate, mgm_solve, tgm_solve, SolveReport, TwoGrid};
