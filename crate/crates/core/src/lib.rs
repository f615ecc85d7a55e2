//! Finite element eigensolver for the fractional Sturm-Liouville problem
//! -D^alpha u + q u = lambda u on (0, 1), u(0) = u(1) = 0, with Caputo or
//! Riemann-Liouville derivatives of order alpha in (1, 2).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assembly;
pub mod eig;
pub mod error;
pub mod linalg;
pub mod mesh;
pub mod mittag_leffler;
pub mod oracle;
pub mod potential;
pub mod quadrature;
pub mod report;
pub mod representation;
pub mod special;
pub mod study;
pub mod verify;

pub use assembly::{assemble, OperatorPair, ProblemSpec};
pub use error::{FslpError, Result};
pub use mesh::{gamma_coefficients, make_mesh, DerivKind, FracOrder, Mesh, TestSpaceData};
pub use num_complex::Complex64;
pub use potential::{PiecewisePoly, Potential};
