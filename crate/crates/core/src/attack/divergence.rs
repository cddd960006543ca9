use crate::error::{Error, Result};

use super::KdeModel;

pub const DEFAULT_GRID_POINTS: usize = 512;
const MIN_GRID_POINTS: usize = 64;

/// Integration domain and resolution for density comparisons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DivergenceConfig {
    lo: f64,
    hi: f64,
    points: usize,
}

impl DivergenceConfig {
    pub fn new(lo: f64, hi: f64, points: usize) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidInput(format!("grid needs lo < hi, got [{lo}, {hi}]")));
        }
        if points < MIN_GRID_POINTS {
            return Err(Error::InvalidInput(format!(
                "grid needs at least {MIN_GRID_POINTS} points, got {points}"
            )));
        }
        Ok(Self { lo, hi, points })
    }

    /// Smallest grid holding every model's `[min - 4h, max + 4h]`.
    pub fn covering(models: &[&KdeModel], points: usize) -> Result<Self> {
        let (lo, hi) = models.iter().map(|m| m.support()).fold(
            (f64::INFINITY, f64::NEG_INFINITY),
            |(lo, hi), (a, b)| (lo.min(a), hi.max(b)),
        );
        Self::new(lo, hi, points)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.points - 1) as f64
    }

    pub fn grid(&self) -> Vec<f64> {
        let step = self.step();
        (0..self.points).map(|k| self.lo + k as f64 * step).collect()
    }

    pub(crate) fn check_covers(&self, model: &KdeModel) -> Result<()> {
        let (need_lo, need_hi) = model.support();
        let slack = 1e-9 * (self.hi - self.lo);
        if self.lo > need_lo + slack || self.hi < need_hi - slack {
            return Err(Error::GridTooNarrow {
                lo: self.lo,
                hi: self.hi,
                need_lo,
                need_hi,
            });
        }
        Ok(())
    }
}

/// Total-variation distance `1/2 * integral |f - g|` between two density
/// estimates, by the trapezoidal rule on the configured grid.
///
/// 0 means identical estimates, 1 means disjoint supports.
pub fn density_divergence(f: &KdeModel, g: &KdeModel, cfg: &DivergenceConfig) -> Result<f64> {
    cfg.check_covers(f)?;
    cfg.check_covers(g)?;
    let grid = cfg.grid();
    Ok(tv_on_grid(&f.evaluate(&grid), &g.evaluate(&grid), cfg.step()))
}

pub(crate) fn tv_on_grid(f: &[f64], g: &[f64], step: f64) -> f64 {
    let diffs: Vec<f64> = f.iter().zip(g).map(|(a, b)| (a - b).abs()).collect();
    let inner: f64 = diffs.iter().sum();
    0.5 * step * (inner - 0.5 * (diffs[0] + diffs[diffs.len() - 1]))
}
