//! Seeded Gaussian sampling and the small dense linear algebra used by every
//! other module.

mod eigen;
mod matrix;
mod rng;
pub mod special;

pub use eigen::{gram_determinant, inverse_sqrt_sym, jacobi_eigen, tridiagonal_eigen, SymmetricEigen};
pub use matrix::DenseMatrix;
pub(crate) use matrix::dot;
pub use rng::{sample_gaussian_matrix, RngStream};
