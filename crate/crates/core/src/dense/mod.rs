//! Dense kernels: LU with partial pivoting, real Schur decomposition and a
//! symmetric eigensolver. Sized for the desk-scale problems this crate
//! targets (a few hundred states at most).

mod lu;
mod schur;
mod symmetric;

pub use lu::LuDecomposition;
pub use schur::{real_schur, RealSchur, SchurBlock};
pub use symmetric::symmetric_eigenvalues;
