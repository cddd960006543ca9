use crate::error::{Error, Result};

use super::Matrix;

/// Thin Householder QR of a tall matrix `a` (`rows >= cols`).
///
/// Returns `q` (`rows x cols`, orthonormal columns) and `r` (`cols x cols`,
/// upper triangular) with a non-negative diagonal, which makes the
/// factorization unique for full-rank input.
pub fn qr_decompose(a: &Matrix) -> Result<(Matrix, Matrix)> {
    let (m, n) = a.shape();
    if m < n {
        return Err(Error::InvalidInput(format!(
            "qr_decompose needs rows >= cols, got {m}x{n}"
        )));
    }
    let scale = a.frobenius_norm();
    let tol = 1e-12 * scale.max(f64::MIN_POSITIVE);

    let mut work = a.clone();
    let mut reflectors: Vec<Vec<f64>> = Vec::with_capacity(n);

    for k in 0..n {
        let norm_x = (k..m).map(|i| work[(i, k)].powi(2)).sum::<f64>().sqrt();
        if norm_x <= tol {
            return Err(Error::RankDeficient {
                column: k,
                pivot: norm_x,
            });
        }
        let x0 = work[(k, k)];
        let alpha = if x0 >= 0.0 { -norm_x } else { norm_x };

        let mut v: Vec<f64> = (k..m).map(|i| work[(i, k)]).collect();
        v[0] -= alpha;
        let v_norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if v_norm > 0.0 {
            v.iter_mut().for_each(|x| *x /= v_norm);
            apply_reflector(&mut work, &v, k, k);
        }
        reflectors.push(v);
    }

    let mut r = Matrix::from_fn(n, n, |i, j| if j >= i { work[(i, j)] } else { 0.0 });

    // Q = H_0 H_1 ... H_{n-1} applied to the first n columns of I.
    let mut q = Matrix::from_fn(m, n, |i, j| if i == j { 1.0 } else { 0.0 });
    for (k, v) in reflectors.iter().enumerate().rev() {
        apply_reflector(&mut q, v, k, 0);
    }

    for k in 0..n {
        if r[(k, k)] < 0.0 {
            for j in k..n {
                r[(k, j)] = -r[(k, j)];
            }
            for i in 0..m {
                q[(i, k)] = -q[(i, k)];
            }
        }
    }
    Ok((q, r))
}

/// `a[k.., col0..] -= 2 v (v^T a[k.., col0..])` for a unit vector `v`.
fn apply_reflector(a: &mut Matrix, v: &[f64], k: usize, col0: usize) {
    let cols = a.cols();
    for j in col0..cols {
        let dot: f64 = v.iter().enumerate().map(|(t, vt)| vt * a[(k + t, j)]).sum();
        if dot == 0.0 {
            continue;
        }
        for (t, vt) in v.iter().enumerate() {
            a[(k + t, j)] -= 2.0 * vt * dot;
        }
    }
}
