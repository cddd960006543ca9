use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::rng::seeded_rng;

use super::{mat_mul, qr_decompose, Matrix};

/// A square orthogonal matrix (`Q Q^T = I`), used as a secret rotation.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationMatrix {
    matrix: Matrix,
}

impl RotationMatrix {
    /// Wraps `matrix` after checking `||Q Q^T - I||_max <= 1e-10`.
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::InvalidInput(format!(
                "rotation must be a non-empty square matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let rot = Self { matrix };
        let err = rot.orthogonality_error();
        if err > 1e-10 {
            return Err(Error::InvalidInput(format!(
                "matrix is not orthogonal (||QQ^T - I||_max = {err:e})"
            )));
        }
        Ok(rot)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: Matrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn transpose(&self) -> RotationMatrix {
        Self {
            matrix: self.matrix.transpose(),
        }
    }

    /// `Q * data` for a `dim x k` block of column vectors.
    pub fn apply(&self, data: &Matrix) -> Result<Matrix> {
        mat_mul(&self.matrix, data)
    }

    pub fn apply_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim());
        (0..self.dim())
            .map(|i| self.matrix.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn orthogonality_error(&self) -> f64 {
        let qqt = mat_mul(&self.matrix, &self.matrix.transpose()).expect("square");
        qqt.sub(&Matrix::identity(self.dim())).expect("same shape").max_abs()
    }
}

/// Haar-distributed random orthogonal matrix, deterministic in `seed`.
///
/// Draws a `dim x dim` standard-normal matrix (row-major, from the seeded
/// ChaCha8 stream) and returns the `Q` factor of its QR decomposition with
/// `R`'s diagonal forced positive.
pub fn random_orthogonal(dim: usize, seed: u64) -> Result<RotationMatrix> {
    if dim == 0 {
        return Err(Error::InvalidInput("rotation dimension must be >= 1".into()));
    }
    let mut rng = seeded_rng(seed);
    let g = Matrix::from_fn(dim, dim, |_, _| StandardNormal.sample(&mut rng));
    let (q, _) = qr_decompose(&g)?;
    RotationMatrix::new(q)
}
