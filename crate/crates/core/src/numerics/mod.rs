//! Foundation types shared by every other module.

pub mod eigen;
pub mod matrix;
pub mod poly;
pub mod quadrature;
pub mod rational;
pub mod rng;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues};
pub use matrix::ComplexMatrix;
pub use rng::{gaussian_complex_matrix, RngStream};

pub use num_complex::Complex64;
