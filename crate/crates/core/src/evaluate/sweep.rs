use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use crate::attack::{ak_ica_attack, AttackConfig, Bounds};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, seeded_rng};
use crate::transform::{make_partitioning, normalize_to_unit, perturb, Dataset, PerturbationKey};

pub const SWEEP_CSV_HEADER: &str = "n,fraction,seed,accuracy,converged";

// Sub-seed streams derived from each cell seed.
const KEY_STREAM: u64 = 0x006b_6579;
const KNOWN_STREAM: u64 = 0x006b_6e6f_776e;
const ICA_STREAM: u64 = 0x0069_6361;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub ns: Vec<usize>,
    pub fractions: Vec<f64>,
    pub seeds: Vec<u64>,
    pub attack: AttackConfig,
    /// Normalize records to unit length before perturbing; accuracy is then
    /// measured on the normalized data. Off by default.
    pub normalize: bool,
}

impl SweepConfig {
    pub fn new(ns: Vec<usize>, fractions: Vec<f64>, seeds: Vec<u64>) -> Self {
        Self {
            ns,
            fractions,
            seeds,
            attack: AttackConfig::default(),
            normalize: false,
        }
    }

    fn validate(&self, records: usize) -> Result<()> {
        if self.ns.is_empty() || self.fractions.is_empty() || self.seeds.is_empty() {
            return Err(Error::InvalidInput("sweep needs at least one n, fraction and seed".into()));
        }
        if let Some(&n) = self.ns.iter().find(|&&n| n == 0 || n > records) {
            return Err(Error::InvalidInput(format!("n = {n} is invalid for {records} records")));
        }
        if let Some(f) = self.fractions.iter().find(|f| !(**f > 0.0 && **f < 1.0)) {
            return Err(Error::InvalidInput(format!("fraction {f} is outside (0, 1)")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepCell {
    pub n: usize,
    pub fraction: f64,
    pub seed: u64,
    /// NaN when the cell failed.
    pub accuracy: f64,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummaryRow {
    pub n: usize,
    pub fraction: f64,
    /// Over converged cells only; NaN when there are none.
    pub mean: f64,
    pub stddev: f64,
    pub cells: usize,
    pub non_converged: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub cells: Vec<SweepCell>,
    pub summary: Vec<SweepSummaryRow>,
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(SWEEP_CSV_HEADER);
        out.push('\n');
        for c in &self.cells {
            out.push_str(&format!("{},{},{},{},{}\n", c.n, c.fraction, c.seed, c.accuracy, c.converged));
        }
        out
    }

    pub fn summary_json(&self) -> String {
        // Empty means are written as null.
        let rows: Vec<serde_json::Value> = self
            .summary
            .iter()
            .map(|r| {
                serde_json::json!({
                    "n": r.n,
                    "fraction": r.fraction,
                    "mean": finite_or_null(r.mean),
                    "stddev": finite_or_null(r.stddev),
                    "cells": r.cells,
                    "non_converged": r.non_converged,
                    "failed": r.failed,
                })
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({ "summary": rows })).expect("json")
    }

    pub fn mean(&self, n: usize, fraction: f64) -> Option<f64> {
        self.summary
            .iter()
            .find(|r| r.n == n && r.fraction == fraction)
            .map(|r| r.mean)
    }
}

fn finite_or_null(v: f64) -> serde_json::Value {
    if v.is_finite() {
        serde_json::json!(v)
    } else {
        serde_json::Value::Null
    }
}

/// Key used for the cell `(n, seed)`: master seed `derive_seed(seed, KEY)`,
/// `n` equal parts.
pub fn cell_key(seed: u64, n: usize, records: usize, dim: usize, normalized: bool) -> Result<PerturbationKey> {
    PerturbationKey::new(
        derive_seed(seed, KEY_STREAM),
        make_partitioning(records, n)?,
        dim,
        normalized,
    )
}

/// Sorted indices of the records known to the attacker: the first
/// `round(fraction * records)` entries of a seeded permutation. Subsets are
/// nested across fractions for a fixed seed.
pub fn known_indices(records: usize, fraction: f64, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..records).collect();
    order.shuffle(&mut seeded_rng(derive_seed(seed, KNOWN_STREAM)));
    let m = ((records as f64) * fraction).round() as usize;
    let mut picked = order[..m.clamp(1, records.saturating_sub(1).max(1))].to_vec();
    picked.sort_unstable();
    picked
}

/// Attack settings for a cell: `base` with the ICA seed drawn from `seed`.
pub fn cell_attack_config(base: &AttackConfig, seed: u64) -> AttackConfig {
    let mut cfg = *base;
    cfg.ica.seed = derive_seed(seed, ICA_STREAM);
    cfg
}

/// One attack run. `truth` is the data as perturbed (already normalized when
/// the sweep normalizes).
pub fn run_sweep_cell(
    truth: &Dataset,
    bounds: &Bounds,
    n: usize,
    fraction: f64,
    seed: u64,
    attack: &AttackConfig,
) -> SweepCell {
    let outcome = (|| -> Result<(f64, bool)> {
        let (d, records) = truth.shape();
        let key = cell_key(seed, n, records, d, truth.is_unit_normalized())?;
        let released = perturb(truth, &key)?;
        let known = known_indices(records, fraction, seed);
        let known_original = truth.select_records(&known)?;
        let cfg = cell_attack_config(attack, seed);
        let mut report = ak_ica_attack(&released, &known_original, &known, bounds, &cfg)?;
        let acc = report.score(truth)?;
        Ok((acc, report.converged()))
    })();
    match outcome {
        Ok((accuracy, converged)) => SweepCell {
            n,
            fraction,
            seed,
            accuracy,
            converged,
            error: None,
        },
        Err(e) => SweepCell {
            n,
            fraction,
            seed,
            accuracy: f64::NAN,
            converged: false,
            error: Some(e.to_string()),
        },
    }
}

/// Full factorial sweep over `(n, fraction, seed)`, cells ordered with `n`
/// outermost and `seed` innermost. Cells run in parallel on the current
/// rayon pool; the output does not depend on scheduling.
pub fn run_figure1_sweep(data: &Dataset, cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate(data.num_records())?;
    let truth = if cfg.normalize {
        normalize_to_unit(data)?.0
    } else {
        data.clone()
    };
    let bounds = Bounds::from_dataset(&truth);

    let coords: Vec<(usize, f64, u64)> = cfg
        .ns
        .iter()
        .flat_map(|&n| {
            cfg.fractions
                .iter()
                .flat_map(move |&f| cfg.seeds.iter().map(move |&s| (n, f, s)))
        })
        .collect();
    let cells: Vec<SweepCell> = coords
        .par_iter()
        .map(|&(n, f, s)| run_sweep_cell(&truth, &bounds, n, f, s, &cfg.attack))
        .collect();

    let mut summary = Vec::new();
    for &n in &cfg.ns {
        for &fraction in &cfg.fractions {
            let group: Vec<&SweepCell> = cells.iter().filter(|c| c.n == n && c.fraction == fraction).collect();
            let good: Vec<f64> = group.iter().filter(|c| c.converged).map(|c| c.accuracy).collect();
            let failed = group.iter().filter(|c| c.error.is_some()).count();
            let non_converged = group.iter().filter(|c| !c.converged && c.error.is_none()).count();
            let (mean, stddev) = if good.is_empty() {
                (f64::NAN, f64::NAN)
            } else {
                let m = good.iter().sum::<f64>() / good.len() as f64;
                let v = good.iter().map(|a| (a - m).powi(2)).sum::<f64>() / good.len() as f64;
                (m, v.sqrt())
            };
            summary.push(SweepSummaryRow {
                n,
                fraction,
                mean,
                stddev,
                cells: group.len(),
                non_converged,
                failed,
            });
        }
    }
    Ok(SweepReport { cells, summary })
}
