//! Dense complex linear algebra kernels: LU determinants, Schur
//! decomposition by Hessenberg reduction and shifted QR, and one-sided
//! Jacobi SVD for numerical rank and null spaces.

mod lu;
mod schur;
mod svd;

pub use lu::{det, Lu};
pub use schur::{complex_eigen, eigenvalues, schur, sort_canonical, EigenPair, Schur};
pub use svd::{nullspace, numerical_rank, orthonormal_basis, svd, Svd};
