//! Generalized toric-Bernstein (GT-Bernstein) bases on real node sets.
//!
//! - [`basis`]: raw and rational basis evaluation, Bernstein degeneration.
//! - [`matrix`], [`tp`]: collocation and power matrices, generalized Vandermonde
//!   matrices, and total-positivity checks by minor enumeration.
//! - [`curve`]: GT-Bezier curves with classical and rational Bezier baselines.
//! - [`pia`]: progressive iterative approximation and its convergence certificate.
//! - [`reproduce`]: the circle and helix fitting experiments.
//! - [`config`], [`export`], [`cli`]: the command-line tool.

pub mod basis;
pub mod cli;
pub mod config;
pub mod curve;
pub mod error;
pub mod export;
pub mod matrix;
pub mod pia;
pub mod reproduce;
pub mod tp;

pub use basis::{
    bernstein_equivalent_nodeset, bernstein_reference, eval_gt_basis, eval_rational_basis, validate_node_set,
    BasisError, BasisValues, NodeSet, WeightVector,
};
pub use curve::{classical_bezier, rational_bezier, ControlPolygon, CurveError, GTBezierCurve};
pub use error::AppError;
pub use matrix::{minor_det, DenseMatrix, MatrixError};
pub use pia::{
    adjustment_vectors, iteration_spectrum, pia_init, pia_run, pia_step, FitProblem, PiaError, PiaState,
};
pub use tp::{
    collocation_matrix, generalized_vandermonde, is_totally_positive, power_reduction, rational_collocation_matrix,
    verify_ntp_suite, GenVandermondeSpec, TpError, TpMethod, TpReport,
};
