//! Dense real linear algebra: everything above this module is built on
//! these kernels. Sized for desk-scale problems (n ≤ 64).

mod lu;
mod matrix;
mod schur;
mod symmetric;
mod tol;

pub use lu::{complex_solve, inverse, lu_solve, Lu};
pub use matrix::Matrix;
pub use schur::{eigen_with_vectors, eigenvalues, real_schur, real_schur_with, EigenDecomposition, RealSchur};
pub use symmetric::{cholesky, svd, sym_eig, sym_eig_with};
pub use tol::Tolerances;
