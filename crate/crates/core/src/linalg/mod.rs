//! Dense linear algebra kernels used by the eigensolvers.

mod dense;
mod hqr;
mod lu;
mod structured;

pub use dense::{DMat, Scalar, Tridiag};
pub use hqr::{hessenberg_reduce, hqr_eigenvalues};
pub use lu::LuFactor;
pub use structured::HessRankOneLu;
