use crate::error::{Error, Result};
use crate::linalg::{mat_mul, sym_eig, Matrix};
use crate::transform::Dataset;

/// Eigenvalues at or below this fraction of the largest count as singular.
const SINGULAR_RATIO: f64 = 1e-12;

/// PCA whitening of a `d x N` dataset: `data = whitening * (y - mean)` has
/// zero mean and identity (population) covariance.
#[derive(Clone, Debug)]
pub struct Whitened {
    pub data: Matrix,
    pub whitening: Matrix,
    /// Inverse of `whitening`.
    pub dewhitening: Matrix,
    pub mean: Vec<f64>,
}

pub fn whiten(y: &Dataset) -> Result<Whitened> {
    whiten_matrix(y.matrix())
}

pub(crate) fn whiten_matrix(y: &Matrix) -> Result<Whitened> {
    let (d, n) = y.shape();
    if n <= d {
        return Err(Error::InvalidInput(format!(
            "whitening needs more records than attributes, got {n} records for {d} attributes"
        )));
    }
    let mean: Vec<f64> = (0..d).map(|i| y.row(i).iter().sum::<f64>() / n as f64).collect();
    let centered = Matrix::from_fn(d, n, |i, j| y[(i, j)] - mean[i]);

    let mut cov = Matrix::zeros(d, d);
    for a in 0..d {
        for b in a..d {
            let s: f64 = centered.row(a).iter().zip(centered.row(b)).map(|(u, v)| u * v).sum();
            cov[(a, b)] = s / n as f64;
            cov[(b, a)] = s / n as f64;
        }
    }
    let (values, vectors) = sym_eig(&cov)?;
    let largest = values[0];
    let smallest = values[d - 1];
    if largest <= 0.0 || smallest <= SINGULAR_RATIO * largest {
        return Err(Error::SingularCovariance {
            eigenvalue: smallest,
            direction: vectors.column(d - 1),
        });
    }
    let whitening = Matrix::from_fn(d, d, |i, j| vectors[(j, i)] / values[i].sqrt());
    let dewhitening = Matrix::from_fn(d, d, |i, j| vectors[(i, j)] * values[j].sqrt());
    let data = mat_mul(&whitening, &centered)?;
    Ok(Whitened {
        data,
        whitening,
        dewhitening,
        mean,
    })
}
