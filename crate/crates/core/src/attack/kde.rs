use std::f64::consts::PI;

use crate::error::{Error, Result};

const MIN_SAMPLE: usize = 8;
/// Kernels farther than this many bandwidths contribute < 1e-21 and are skipped.
const KERNEL_CUTOFF: f64 = 10.0;

/// Gaussian kernel density estimate with Silverman's rule-of-thumb bandwidth.
#[derive(Clone, Debug, PartialEq)]
pub struct KdeModel {
    sample: Vec<f64>,
    bandwidth: f64,
}

/// Fits `h = 0.9 * min(sd, IQR / 1.34) * m^(-1/5)`; when the IQR vanishes
/// but the sample still has spread, the standard deviation alone is used.
pub fn kde_fit(sample: &[f64]) -> Result<KdeModel> {
    if sample.len() < MIN_SAMPLE {
        return Err(Error::DegenerateSample(format!(
            "KDE needs at least {MIN_SAMPLE} points, got {}",
            sample.len()
        )));
    }
    if sample.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("kde_fit"));
    }
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len() as f64;
    let mean = sorted.iter().sum::<f64>() / m;
    let sd = (sorted.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0)).sqrt();
    let iqr = quantile(&sorted, 0.75) - quantile(&sorted, 0.25);
    let spread = if iqr > 0.0 { sd.min(iqr / 1.34) } else { sd };
    if !(spread > 0.0) {
        return Err(Error::DegenerateSample("sample has zero spread".into()));
    }
    Ok(KdeModel {
        sample: sorted,
        bandwidth: 0.9 * spread * m.powf(-0.2),
    })
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

impl KdeModel {
    /// Model with an explicit bandwidth.
    pub fn with_bandwidth(sample: &[f64], bandwidth: f64) -> Result<Self> {
        if !(bandwidth > 0.0) || !bandwidth.is_finite() {
            return Err(Error::InvalidInput(format!("bandwidth must be positive, got {bandwidth}")));
        }
        if sample.is_empty() || sample.iter().any(|v| !v.is_finite()) {
            return Err(Error::DegenerateSample("empty or non-finite sample".into()));
        }
        let mut sorted = sample.to_vec();
        sorted.sort_by(f64::total_cmp);
        Ok(Self { sample: sorted, bandwidth })
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    /// The sample, sorted ascending.
    pub fn sample(&self) -> &[f64] {
        &self.sample
    }

    pub fn min(&self) -> f64 {
        self.sample[0]
    }

    pub fn max(&self) -> f64 {
        self.sample[self.sample.len() - 1]
    }

    /// `[min - 4h, max + 4h]`, the interval holding essentially all the mass.
    pub fn support(&self) -> (f64, f64) {
        (self.min() - 4.0 * self.bandwidth, self.max() + 4.0 * self.bandwidth)
    }

    pub fn density(&self, z: f64) -> f64 {
        let h = self.bandwidth;
        let lo = self.sample.partition_point(|&v| v < z - KERNEL_CUTOFF * h);
        let hi = self.sample.partition_point(|&v| v <= z + KERNEL_CUTOFF * h);
        let sum: f64 = self.sample[lo..hi]
            .iter()
            .map(|&v| {
                let u = (z - v) / h;
                (-0.5 * u * u).exp()
            })
            .sum();
        sum / (self.sample.len() as f64 * h * (2.0 * PI).sqrt())
    }

    pub fn evaluate(&self, grid: &[f64]) -> Vec<f64> {
        grid.iter().map(|&z| self.density(z)).collect()
    }

    /// Density of `-X`.
    pub fn reflected(&self) -> KdeModel {
        KdeModel {
            sample: self.sample.iter().rev().map(|v| -v).collect(),
            bandwidth: self.bandwidth,
        }
    }

    /// Density of `X + c`.
    pub fn shifted(&self, c: f64) -> KdeModel {
        KdeModel {
            sample: self.sample.iter().map(|v| v + c).collect(),
            bandwidth: self.bandwidth,
        }
    }
}
