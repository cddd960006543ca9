use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rng::{derive_seed, seeded_rng};

const RESTARTS: u64 = 10;
const MAX_ITER: usize = 300;
/// A restart must beat the incumbent by this relative margin to replace it.
const INERTIA_MARGIN: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClusteringResult {
    pub k: usize,
    pub assignments: Vec<usize>,
    pub centroids: Vec<Vec<f64>>,
    pub inertia: f64,
}

impl ClusteringResult {
    /// Wraps precomputed labels (centroids and inertia left empty).
    pub fn from_labels(k: usize, assignments: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = assignments.iter().find(|&&l| l >= k) {
            return Err(Error::InvalidInput(format!("label {bad} out of range for k = {k}")));
        }
        Ok(Self {
            k,
            assignments,
            centroids: Vec::new(),
            inertia: 0.0,
        })
    }

    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &l in &self.assignments {
            sizes[l] += 1;
        }
        sizes
    }
}

/// Lloyd's algorithm with k-means++ seeding, best of 10 restarts.
///
/// `points` holds one point per row. Restart `r` draws from
/// `derive_seed(seed, r)`, and every choice depends only on distances and
/// row order, so two point sets with identical distance matrices cluster
/// identically.
pub fn kmeans(points: &Matrix, k: usize, seed: u64) -> Result<ClusteringResult> {
    let n = points.rows();
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!("k = {k} is invalid for {n} points")));
    }
    let mut best: Option<ClusteringResult> = None;
    for restart in 0..RESTARTS {
        let run = lloyd(points, k, derive_seed(seed, restart));
        let better = match &best {
            None => true,
            Some(b) => run.inertia < b.inertia - INERTIA_MARGIN * b.inertia,
        };
        if better {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one restart"))
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum()
}

fn plus_plus_init(points: &Matrix, k: usize, seed: u64) -> Vec<Vec<f64>> {
    let n = points.rows();
    let mut rng = seeded_rng(seed);
    let mut centers = vec![points.row(rng.random_range(0..n)).to_vec()];
    let mut nearest: Vec<f64> = (0..n).map(|j| sq_dist(points.row(j), &centers[0])).collect();
    while centers.len() < k {
        let total: f64 = nearest.iter().sum();
        let pick = if total > 0.0 {
            let target = rng.random::<f64>() * total;
            let mut acc = 0.0;
            let mut chosen = n - 1;
            for (j, &w) in nearest.iter().enumerate() {
                acc += w;
                if acc > target && w > 0.0 {
                    chosen = j;
                    break;
                }
            }
            chosen
        } else {
            rng.random_range(0..n)
        };
        let c = points.row(pick).to_vec();
        for (j, slot) in nearest.iter_mut().enumerate() {
            *slot = slot.min(sq_dist(points.row(j), &c));
        }
        centers.push(c);
    }
    centers
}

fn nearest_center(p: &[f64], centers: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, center) in centers.iter().enumerate() {
        let dist = sq_dist(p, center);
        if dist < best.1 {
            best = (c, dist);
        }
    }
    best
}

fn lloyd(points: &Matrix, k: usize, seed: u64) -> ClusteringResult {
    let (n, dim) = points.shape();
    let mut centers = plus_plus_init(points, k, seed);
    let mut labels = vec![usize::MAX; n];

    for _ in 0..MAX_ITER {
        let mut changed = false;
        let mut dists = vec![0.0; n];
        for j in 0..n {
            let (c, dist) = nearest_center(points.row(j), &centers);
            if labels[j] != c {
                labels[j] = c;
                changed = true;
            }
            dists[j] = dist;
        }
        if !changed {
            break;
        }

        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for j in 0..n {
            counts[labels[j]] += 1;
            for (s, v) in sums[labels[j]].iter_mut().zip(points.row(j)) {
                *s += v;
            }
        }
        for c in 0..k {
            if counts[c] > 0 {
                centers[c] = sums[c].iter().map(|s| s / counts[c] as f64).collect();
            } else {
                // Re-seed an empty cluster at the worst-served point.
                let far = (0..n)
                    .max_by(|&a, &b| dists[a].total_cmp(&dists[b]).then(b.cmp(&a)))
                    .expect("non-empty");
                centers[c] = points.row(far).to_vec();
                dists[far] = 0.0;
            }
        }
    }

    // Final assignment against the final centers.
    let mut inertia = 0.0;
    for (j, label) in labels.iter_mut().enumerate() {
        let (c, dist) = nearest_center(points.row(j), &centers);
        *label = c;
        inertia += dist;
    }
    ClusteringResult {
        k,
        assignments: labels,
        centroids: centers,
        inertia,
    }
}
