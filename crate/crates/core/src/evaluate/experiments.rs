use rand::seq::SliceRandom;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::attack::{density_divergence, kde_fit, DivergenceConfig, DEFAULT_GRID_POINTS};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rng::{derive_seed, seeded_rng};
use crate::transform::{corresponding_distances, normalize_to_unit, perturb, Dataset, Partitioning, PerturbationKey};

use super::{kmeans, ClusteringResult};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Experiment1Report {
    pub records: usize,
    pub subsample: usize,
    pub divergence: f64,
    /// `1 - divergence`.
    pub similarity: f64,
}

/// How well a KDE fitted on a fraction of a standard-normal sample
/// reproduces the KDE of the whole sample.
///
/// The subsample is a prefix of a seeded permutation, so larger fractions
/// see supersets of smaller ones under the same seed.
pub fn run_experiment1(records: usize, fraction: f64, seed: u64) -> Result<Experiment1Report> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidInput(format!("fraction must lie in (0, 1], got {fraction}")));
    }
    let mut rng = seeded_rng(seed);
    let sample: Vec<f64> = (0..records).map(|_| StandardNormal.sample(&mut rng)).collect();
    let m = ((records as f64) * fraction).round() as usize;
    let mut order: Vec<usize> = (0..records).collect();
    order.shuffle(&mut seeded_rng(derive_seed(seed, 1)));
    let sub: Vec<f64> = order[..m.min(records)].iter().map(|&j| sample[j]).collect();

    let full = kde_fit(&sample)?;
    let part = kde_fit(&sub)?;
    let cfg = DivergenceConfig::covering(&[&full, &part], DEFAULT_GRID_POINTS)?;
    let divergence = density_divergence(&full, &part, &cfg)?;
    Ok(Experiment1Report {
        records,
        subsample: sub.len(),
        divergence,
        similarity: 1.0 - divergence,
    })
}

fn cluster_scalars(values: &[f64], k: usize, seed: u64) -> Result<ClusteringResult> {
    let points = Matrix::from_vec(values.len(), 1, values.to_vec())?;
    kmeans(&points, k, seed)
}

/// Third-party side of the access-log application: corresponding-record
/// distances between two releases, clustered by k-means.
pub fn third_party_cluster(
    released_a: &Dataset,
    released_b: &Dataset,
    partitioning: &Partitioning,
    k: usize,
    seed: u64,
) -> Result<ClusteringResult> {
    let distances = corresponding_distances(released_a, released_b, partitioning)?;
    cluster_scalars(&distances, k, seed)
}

/// Both sites normalize and perturb their logs under `key`; the third party
/// clusters the per-slot distances.
pub fn run_application3(
    log_a: &Dataset,
    log_b: &Dataset,
    key: &PerturbationKey,
    k: usize,
    seed: u64,
) -> Result<ClusteringResult> {
    if log_a.shape() != log_b.shape() {
        return Err(Error::DimensionMismatch {
            op: "run_application3",
            left: log_a.shape(),
            right: log_b.shape(),
        });
    }
    if !key.normalization_applied() {
        return Err(Error::InvalidInput(
            "distances from inner products need a key for unit-normalized data".into(),
        ));
    }
    let (a, _) = normalize_to_unit(log_a)?;
    let (b, _) = normalize_to_unit(log_b)?;
    let ya = perturb(&a, key)?;
    let yb = perturb(&b, key)?;
    third_party_cluster(&ya, &yb, key.partitioning(), k, seed)
}

/// The same pipeline on unperturbed logs, with distances computed directly.
pub fn application3_plaintext(log_a: &Dataset, log_b: &Dataset, k: usize, seed: u64) -> Result<ClusteringResult> {
    if log_a.shape() != log_b.shape() {
        return Err(Error::DimensionMismatch {
            op: "application3_plaintext",
            left: log_a.shape(),
            right: log_b.shape(),
        });
    }
    let (a, _) = normalize_to_unit(log_a)?;
    let (b, _) = normalize_to_unit(log_b)?;
    let distances: Vec<f64> = (0..a.num_records())
        .map(|j| {
            a.record(j)
                .iter()
                .zip(b.record(j))
                .map(|(u, v)| (u - v).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    cluster_scalars(&distances, k, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluate::cluster_agreement;
    use crate::evaluate::synthetic::access_log_pair;
    use crate::transform::make_partitioning;

    #[test]
    fn full_fraction_is_exact() {
        let r = run_experiment1(2000, 1.0, 3).unwrap();
        assert_eq!(r.similarity, 1.0);
        assert_eq!(r.subsample, 2000);
        assert!(run_experiment1(2000, 0.0, 3).is_err());
        assert!(run_experiment1(2000, 1.2, 3).is_err());
    }

    #[test]
    fn identical_logs_form_one_cluster() {
        let (a, _, _) = access_log_pair(4, 120, 0.1, 1).unwrap();
        let key = PerturbationKey::new(5, make_partitioning(120, 4).unwrap(), 4, true).unwrap();
        let res = run_application3(&a, &a, &key, 2, 9).unwrap();
        let sizes = res.cluster_sizes();
        assert!(sizes.contains(&120), "sizes {sizes:?}");
        let plain = application3_plaintext(&a, &a, 2, 9).unwrap();
        assert_eq!(cluster_agreement(&res, &plain).unwrap(), 1.0);
    }

    #[test]
    fn anomalies_isolated_and_seed_independent() {
        let (a, b, anomalies) = access_log_pair(4, 200, 0.1, 2).unwrap();
        let plain = application3_plaintext(&a, &b, 2, 4).unwrap();
        let label = plain.assignments[anomalies[0]];
        for j in 0..200 {
            assert_eq!(plain.assignments[j] == label, anomalies.contains(&j), "slot {j}");
        }
        for master in [1u64, 2, 3] {
            let key = PerturbationKey::new(master, make_partitioning(200, 8).unwrap(), 4, true).unwrap();
            let res = run_application3(&a, &b, &key, 2, 4).unwrap();
            assert_eq!(res.assignments, plain.assignments);
        }
    }

    #[test]
    fn raw_key_rejected() {
        let (a, b, _) = access_log_pair(3, 30, 0.1, 3).unwrap();
        let key = PerturbationKey::new(1, make_partitioning(30, 2).unwrap(), 3, false).unwrap();
        assert!(run_application3(&a, &b, &key, 2, 1).is_err());
    }
}
