//! Dense linear algebra sized for the dimensions this crate works with
//! (a few dozen attributes at most).

mod eig;
mod matrix;
mod qr;
mod rotation;

pub use eig::sym_eig;
pub use matrix::{frobenius_norm, mat_mul, Matrix};
pub use qr::qr_decompose;
pub use rotation::{random_orthogonal, RotationMatrix};
