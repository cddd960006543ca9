use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::mat_mul;
use crate::transform::Dataset;

use super::ica::fast_ica_matrix;
use super::{align_components, Alignment, AlignmentConfig, IcaConfig};

/// Per-attribute `(min, max)` value ranges known to the attacker.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds(pub Vec<(f64, f64)>);

impl Bounds {
    pub fn from_dataset(x: &Dataset) -> Self {
        Bounds(
            (0..x.num_attributes())
                .map(|i| {
                    let row = x.attribute(i);
                    let lo = row.iter().copied().fold(f64::INFINITY, f64::min);
                    let hi = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    (lo, hi)
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Maps each attribute affinely so that its sample minimum and maximum land
/// on the given bounds.
pub fn rescale_to_bounds(x_hat: &Dataset, bounds: &Bounds) -> Result<Dataset> {
    let (d, n) = x_hat.shape();
    if bounds.len() != d {
        return Err(Error::InvalidInput(format!("{} bounds for {d} attributes", bounds.len())));
    }
    let mut out = x_hat.matrix().clone();
    for (i, &(lo, hi)) in bounds.0.iter().enumerate() {
        if !(hi > lo) {
            return Err(Error::InvalidInput(format!(
                "bounds for attribute {i} need max > min, got ({lo}, {hi})"
            )));
        }
        let row = x_hat.attribute(i);
        let cur_lo = row.iter().copied().fold(f64::INFINITY, f64::min);
        let cur_hi = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let span = cur_hi - cur_lo;
        if !(span > 1e-12 * cur_hi.abs().max(cur_lo.abs()).max(1.0)) || n < 2 {
            return Err(Error::ConstantAttribute { attribute: i });
        }
        let factor = (hi - lo) / span;
        for v in out.row_mut(i) {
            *v = lo + (*v - cur_lo) * factor;
        }
    }
    x_hat.with_values(out)
}

/// `1 - ||x_hat - x||_F / ||x||_F`, clamped to `[0, 1]`.
pub fn reconstruction_accuracy(x_hat: &Dataset, x: &Dataset) -> Result<f64> {
    if x_hat.shape() != x.shape() {
        return Err(Error::DimensionMismatch {
            op: "reconstruction_accuracy",
            left: x_hat.shape(),
            right: x.shape(),
        });
    }
    let norm = x.matrix().frobenius_norm();
    if norm == 0.0 {
        return Err(Error::InvalidInput("ground truth has zero Frobenius norm".into()));
    }
    let err = x_hat.matrix().sub(x.matrix())?.frobenius_norm();
    Ok((1.0 - err / norm).clamp(0.0, 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AttackConfig {
    pub ica: IcaConfig,
    pub alignment: AlignmentConfig,
    /// Use the record indices of the known originals when aligning.
    pub use_linkage: bool,
}

impl Default for AttackConfig {
    fn default() -> Self {
        Self {
            ica: IcaConfig::default(),
            alignment: AlignmentConfig::default(),
            use_linkage: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AttackReport {
    pub reconstructed: Dataset,
    pub alignment: Alignment,
    /// Only set once ground truth is supplied through [`AttackReport::score`].
    pub accuracy: Option<f64>,
    pub per_component_divergence: Vec<f64>,
    pub known_fraction: f64,
    pub released_ica_converged: bool,
    pub known_ica_converged: bool,
    pub released_ica_iterations: usize,
    pub known_ica_iterations: usize,
}

impl AttackReport {
    pub fn converged(&self) -> bool {
        self.released_ica_converged && self.known_ica_converged
    }

    /// Fills `accuracy` against the true data.
    pub fn score(&mut self, truth: &Dataset) -> Result<f64> {
        let acc = reconstruction_accuracy(&self.reconstructed, truth)?;
        self.accuracy = Some(acc);
        Ok(acc)
    }

    pub fn summary(&self) -> AttackSummary {
        AttackSummary {
            known_fraction: self.known_fraction,
            converged: self.converged(),
            released_ica_iterations: self.released_ica_iterations,
            known_ica_iterations: self.known_ica_iterations,
            alignment: self.alignment.clone(),
            per_component_divergence: self.per_component_divergence.clone(),
            accuracy: self.accuracy,
        }
    }
}

/// Serializable view of an [`AttackReport`] without the reconstructed data.
#[derive(Clone, Debug, Serialize)]
pub struct AttackSummary {
    pub known_fraction: f64,
    pub converged: bool,
    pub released_ica_iterations: usize,
    pub known_ica_iterations: usize,
    pub alignment: Alignment,
    pub per_component_divergence: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub accuracy: Option<f64>,
}

/// Reconstructs the original data from a release.
///
/// `known_original` holds original records (as columns) whose released images
/// are the columns `known_indices` of `released`. Steps:
///
/// 1. FastICA on the released data: `released - mean_y = A_y S_y`.
/// 2. FastICA on the known originals: `known - mean_x = A_x S_x`.
/// 3. Align rows of `S_y` to rows of `S_x` ([`align_components`]).
/// 4. `x_hat = A_x (J S_y) + mean_x`, then [`rescale_to_bounds`].
///
/// A non-converged ICA is recorded in the report, not raised.
pub fn ak_ica_attack(
    released: &Dataset,
    known_original: &Dataset,
    known_indices: &[usize],
    bounds: &Bounds,
    cfg: &AttackConfig,
) -> Result<AttackReport> {
    let (d, n) = released.shape();
    if known_original.num_attributes() != d {
        return Err(Error::DimensionMismatch {
            op: "ak_ica_attack",
            left: released.shape(),
            right: known_original.shape(),
        });
    }
    if known_indices.len() != known_original.num_records() {
        return Err(Error::InvalidInput(format!(
            "{} known indices for {} known records",
            known_indices.len(),
            known_original.num_records()
        )));
    }
    if known_indices.is_empty() || known_indices.len() >= n {
        return Err(Error::InvalidInput(format!(
            "known fraction must lie in (0, 1): {} of {n} records",
            known_indices.len()
        )));
    }
    if let Some(&bad) = known_indices.iter().find(|&&j| j >= n) {
        return Err(Error::InvalidInput(format!("known index {bad} out of range for {n} records")));
    }

    let whole = fast_ica_matrix(released.matrix(), &cfg.ica)?;
    let known = fast_ica_matrix(known_original.matrix(), &cfg.ica)?;

    let linked = cfg.use_linkage.then_some(known_indices);
    let alignment = align_components(&whole.components, &known.components, linked, &cfg.alignment)?;

    let sources = alignment.apply(&whole.components);
    let mut x_hat = mat_mul(&known.mixing, &sources)?;
    for i in 0..d {
        let m = known.mean[i];
        x_hat.row_mut(i).iter_mut().for_each(|v| *v += m);
    }
    let x_hat = Dataset::with_names(x_hat, released.attribute_names().to_vec())?;
    let reconstructed = rescale_to_bounds(&x_hat, bounds)?;

    Ok(AttackReport {
        reconstructed,
        per_component_divergence: alignment.divergences.clone(),
        alignment,
        accuracy: None,
        known_fraction: known_indices.len() as f64 / n as f64,
        released_ica_converged: whole.converged,
        known_ica_converged: known.converged,
        released_ica_iterations: whole.iterations_used,
        known_ica_iterations: known.iterations_used,
    })
}
