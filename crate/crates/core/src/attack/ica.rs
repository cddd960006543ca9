use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{mat_mul, sym_eig, Matrix};
use crate::rng::seeded_rng;
use crate::transform::Dataset;

use super::whiten::whiten_matrix;

/// FastICA settings. The contrast is log-cosh (`g = tanh`) with symmetric
/// decorrelation after every update.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IcaConfig {
    pub max_iter: usize,
    pub tol: f64,
    /// Seeds the random initial unmixing matrix.
    pub seed: u64,
}

impl Default for IcaConfig {
    fn default() -> Self {
        Self {
            max_iter: 500,
            tol: 1e-6,
            seed: 0,
        }
    }
}

/// Estimated model `y - mean = mixing * components`.
#[derive(Clone, Debug)]
pub struct IcaResult {
    pub mixing: Matrix,
    pub unmixing: Matrix,
    /// `d x N`; each row has zero mean and unit variance.
    pub components: Matrix,
    pub whitening: Matrix,
    pub mean: Vec<f64>,
    pub iterations_used: usize,
    pub converged: bool,
}

impl IcaResult {
    /// Unmixes new observations with the fitted model.
    pub fn separate(&self, y: &Matrix) -> Result<Matrix> {
        let centered = Matrix::from_fn(y.rows(), y.cols(), |i, j| y[(i, j)] - self.mean[i]);
        mat_mul(&self.unmixing, &centered)
    }
}

pub fn fast_ica(y: &Dataset, cfg: &IcaConfig) -> Result<IcaResult> {
    fast_ica_matrix(y.matrix(), cfg)
}

pub(crate) fn fast_ica_matrix(y: &Matrix, cfg: &IcaConfig) -> Result<IcaResult> {
    let (d, n) = y.shape();
    if d < 2 {
        return Err(Error::InvalidInput("ICA needs at least two attributes".into()));
    }
    if n < 10 * d {
        return Err(Error::InvalidInput(format!(
            "ICA needs at least {} records for {d} attributes, got {n}",
            10 * d
        )));
    }
    if cfg.max_iter == 0 || !(cfg.tol > 0.0) {
        return Err(Error::InvalidInput("ICA needs max_iter >= 1 and tol > 0".into()));
    }
    let white = whiten_matrix(y)?;
    let z = &white.data;

    let mut rng = seeded_rng(cfg.seed);
    let init = Matrix::from_fn(d, d, |_, _| StandardNormal.sample(&mut rng));
    let mut w = symmetric_decorrelation(&init)?;

    let mut converged = false;
    let mut iterations_used = 0;
    for _ in 0..cfg.max_iter {
        iterations_used += 1;
        let w_new = symmetric_decorrelation(&fixed_point_step(&w, z)?)?;
        // Converged when every new direction is parallel to the old one.
        let change = (0..d)
            .map(|i| {
                let dot: f64 = w_new.row(i).iter().zip(w.row(i)).map(|(a, b)| a * b).sum();
                (dot.abs() - 1.0).abs()
            })
            .fold(0.0, f64::max);
        w = w_new;
        if change < cfg.tol {
            converged = true;
            break;
        }
    }

    let components = mat_mul(&w, z)?;
    let unmixing = mat_mul(&w, &white.whitening)?;
    let mixing = mat_mul(&white.dewhitening, &w.transpose())?;
    Ok(IcaResult {
        mixing,
        unmixing,
        components,
        whitening: white.whitening,
        mean: white.mean,
        iterations_used,
        converged,
    })
}

/// `E[g(Wz) z^T] - diag(E[g'(Wz)]) W` with `g = tanh`.
fn fixed_point_step(w: &Matrix, z: &Matrix) -> Result<Matrix> {
    let (d, n) = z.shape();
    let wz = mat_mul(w, z)?;
    let mut next = Matrix::zeros(d, d);
    for i in 0..d {
        let mut g_mean_prime = 0.0;
        let mut acc = vec![0.0; d];
        for (t, &u) in wz.row(i).iter().enumerate() {
            let g = u.tanh();
            g_mean_prime += 1.0 - g * g;
            for (k, a) in acc.iter_mut().enumerate() {
                *a += g * z[(k, t)];
            }
        }
        g_mean_prime /= n as f64;
        for k in 0..d {
            next[(i, k)] = acc[k] / n as f64 - g_mean_prime * w[(i, k)];
        }
    }
    Ok(next)
}

/// `W <- (W W^T)^{-1/2} W`.
fn symmetric_decorrelation(w: &Matrix) -> Result<Matrix> {
    let wwt = mat_mul(w, &w.transpose())?;
    let (values, vectors) = sym_eig(&wwt)?;
    let d = w.rows();
    if values[d - 1] <= 1e-14 * values[0].max(f64::MIN_POSITIVE) {
        return Err(Error::InvalidInput("unmixing matrix became singular".into()));
    }
    let inv_sqrt = Matrix::from_fn(d, d, |i, j| {
        (0..d)
            .map(|k| vectors[(i, k)] * vectors[(j, k)] / values[k].sqrt())
            .sum()
    });
    mat_mul(&inv_sqrt, w)
}
