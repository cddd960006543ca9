//! Built-in synthetic datasets.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rng::seeded_rng;
use crate::transform::Dataset;

/// Independent non-Gaussian attributes: even-indexed attributes are uniform
/// on `[0, 1]`, odd-indexed ones Laplace with location 0.5 and scale 0.15.
/// For `d = 3` that is two uniforms and one Laplace (attributes 0 and 2
/// uniform, attribute 1 Laplace).
pub fn non_gaussian_sources(d: usize, n: usize, seed: u64) -> Result<Dataset> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidInput("synthetic data needs d >= 1 and N >= 1".into()));
    }
    let mut rng = seeded_rng(seed);
    let mut m = Matrix::zeros(d, n);
    // Record-major draw order keeps a prefix of records stable when N grows.
    for j in 0..n {
        for i in 0..d {
            m[(i, j)] = if i % 2 == 0 {
                rng.random::<f64>()
            } else {
                laplace(&mut rng, 0.5, 0.15)
            };
        }
    }
    Dataset::new(m)
}

fn laplace<R: Rng>(rng: &mut R, location: f64, scale: f64) -> f64 {
    // Inverse CDF on u in (-1/2, 1/2).
    let u: f64 = rng.random::<f64>() - 0.5;
    location - scale * u.signum() * (1.0 - 2.0 * u.abs()).max(f64::MIN_POSITIVE).ln()
}

/// `k` Gaussian clusters with well-separated random centers in the positive
/// orthant, in shuffled record order; returns the data and the generating
/// labels.
pub fn gaussian_blobs(d: usize, k: usize, per_cluster: usize, spread: f64, seed: u64) -> Result<(Dataset, Vec<usize>)> {
    if d == 0 || k == 0 || per_cluster == 0 {
        return Err(Error::InvalidInput("blobs need d, k, per_cluster >= 1".into()));
    }
    let mut rng = seeded_rng(seed);
    let noise = Normal::new(0.0, spread).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let centers: Vec<Vec<f64>> = (0..k).map(|_| (0..d).map(|_| rng.random_range(0.5..5.0)).collect()).collect();
    let mut labels: Vec<usize> = (0..k).flat_map(|c| std::iter::repeat_n(c, per_cluster)).collect();
    labels.shuffle(&mut rng);
    let mut m = Matrix::zeros(d, k * per_cluster);
    for (j, &c) in labels.iter().enumerate() {
        for (i, &mu) in centers[c].iter().enumerate() {
            m[(i, j)] = mu + noise.sample(&mut rng);
        }
    }
    Ok((Dataset::new(m)?, labels))
}

/// Two access-log style feature matrices over `slots` time slots. Log B
/// tracks log A up to small noise, except at the returned anomalous slots,
/// where B's feature profile points in a different direction.
pub fn access_log_pair(d: usize, slots: usize, anomaly_fraction: f64, seed: u64) -> Result<(Dataset, Dataset, Vec<usize>)> {
    if d < 2 || slots == 0 || !(0.0..1.0).contains(&anomaly_fraction) {
        return Err(Error::InvalidInput("access logs need d >= 2, slots >= 1, fraction in [0, 1)".into()));
    }
    let mut rng = seeded_rng(seed);
    let jitter = Normal::new(0.0, 0.01).unwrap();
    let mut a = Matrix::zeros(d, slots);
    let mut b = Matrix::zeros(d, slots);
    let anomalies = ((slots as f64) * anomaly_fraction).round() as usize;
    let mut anomalous = rand::seq::index::sample(&mut rng, slots, anomalies).into_vec();
    anomalous.sort_unstable();
    for j in 0..slots {
        let load = rng.random_range(50.0..150.0);
        let profile: Vec<f64> = (0..d).map(|_| rng.random_range(0.5..1.5)).collect();
        let is_anomaly = anomalous.binary_search(&j).is_ok();
        // Anomalous traffic piles onto the feature that is normally quietest.
        let quiet = (0..d).min_by(|&p, &q| profile[p].total_cmp(&profile[q])).unwrap_or(0);
        for i in 0..d {
            a[(i, j)] = load * profile[i];
            b[(i, j)] = if is_anomaly {
                load * if i == quiet { d as f64 } else { 0.05 }
            } else {
                load * profile[i] * (1.0 + jitter.sample(&mut rng))
            };
        }
    }
    Ok((Dataset::new(a)?, Dataset::new(b)?, anomalous))
}
