use serde::Serialize;

use crate::assignment::min_cost_assignment;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

use super::divergence::tv_on_grid;
use super::{kde_fit, DivergenceConfig, KdeModel, DEFAULT_GRID_POINTS};

/// Signed permutation (plus per-component scale) mapping separated components
/// of the released data onto the sources of the known originals.
///
/// Known source `i` is matched with released component `permutation[i]`,
/// multiplied by `signs[i] * scales[i]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Alignment {
    pub permutation: Vec<usize>,
    pub signs: Vec<f64>,
    pub scales: Vec<f64>,
    /// Total-variation distance of each matched pair (after the sign flip).
    pub divergences: Vec<f64>,
}

impl Alignment {
    pub fn identity(d: usize) -> Self {
        Self {
            permutation: (0..d).collect(),
            signs: vec![1.0; d],
            scales: vec![1.0; d],
            divergences: vec![0.0; d],
        }
    }

    /// Rows of `components` reordered, flipped and scaled into source order.
    pub fn apply(&self, components: &Matrix) -> Matrix {
        let d = self.permutation.len();
        assert_eq!(components.rows(), d);
        let mut out = Matrix::zeros(d, components.cols());
        for i in 0..d {
            let factor = self.signs[i] * self.scales[i];
            for (o, &v) in out.row_mut(i).iter_mut().zip(components.row(self.permutation[i])) {
                *o = factor * v;
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlignmentConfig {
    pub grid_points: usize,
    /// Weight of the `1 - |corr|` term computed on linked records. Only used
    /// when linked indices are supplied.
    pub linkage_weight: f64,
}

impl Default for AlignmentConfig {
    fn default() -> Self {
        Self {
            grid_points: DEFAULT_GRID_POINTS,
            linkage_weight: 1.0,
        }
    }
}

/// Matches the rows of `whole` (components separated from the released data)
/// to the rows of `known` (sources separated from the known originals).
///
/// The pairing minimizes the summed total-variation distance between the
/// components' kernel density estimates, solved exactly as an assignment
/// problem. Each component may be flipped, so a pair's distance is the
/// smaller of the two orientations.
///
/// Densities alone cannot tell apart identically distributed sources, nor
/// orient a symmetric one. When `linked` is given, column `t` of `known`
/// and column `linked[t]` of `whole` are the same record; the cost then adds
/// `linkage_weight * (1 - |corr|)` over those records and the sign follows
/// the correlation.
pub fn align_components(
    whole: &Matrix,
    known: &Matrix,
    linked: Option<&[usize]>,
    cfg: &AlignmentConfig,
) -> Result<Alignment> {
    let d = known.rows();
    if whole.rows() != d {
        return Err(Error::DimensionMismatch {
            op: "align_components",
            left: whole.shape(),
            right: known.shape(),
        });
    }
    if let Some(idx) = linked {
        if idx.len() != known.cols() {
            return Err(Error::InvalidInput(format!(
                "{} linked indices for {} known records",
                idx.len(),
                known.cols()
            )));
        }
        if let Some(&bad) = idx.iter().find(|&&j| j >= whole.cols()) {
            return Err(Error::InvalidInput(format!("linked index {bad} out of range")));
        }
    }

    let known_models: Vec<KdeModel> = (0..d).map(|i| kde_fit(known.row(i))).collect::<Result<_>>()?;
    let whole_models: Vec<KdeModel> = (0..d).map(|j| kde_fit(whole.row(j))).collect::<Result<_>>()?;
    let flipped: Vec<KdeModel> = whole_models.iter().map(KdeModel::reflected).collect();

    let all: Vec<&KdeModel> = known_models.iter().chain(&whole_models).chain(&flipped).collect();
    let grid_cfg = DivergenceConfig::covering(&all, cfg.grid_points)?;
    let grid = grid_cfg.grid();
    let step = grid_cfg.step();
    let eval = |models: &[KdeModel]| -> Vec<Vec<f64>> { models.iter().map(|m| m.evaluate(&grid)).collect() };
    let (fk, fw, ff) = (eval(&known_models), eval(&whole_models), eval(&flipped));

    let correlations = linked.map(|idx| {
        let linked_rows = whole.select_columns(idx);
        Matrix::from_fn(d, d, |i, j| correlation(known.row(i), linked_rows.row(j)))
    });

    let mut cost = Matrix::zeros(d, d);
    let mut pair_sign = Matrix::zeros(d, d);
    let mut pair_div = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let plus = tv_on_grid(&fk[i], &fw[j], step);
            let minus = tv_on_grid(&fk[i], &ff[j], step);
            let (sign, div) = match &correlations {
                Some(rho) => {
                    let s = if rho[(i, j)] < 0.0 { -1.0 } else { 1.0 };
                    (s, if s > 0.0 { plus } else { minus })
                }
                None if minus < plus => (-1.0, minus),
                None => (1.0, plus),
            };
            let linkage = correlations
                .as_ref()
                .map_or(0.0, |rho| cfg.linkage_weight * (1.0 - rho[(i, j)].abs()));
            cost[(i, j)] = div + linkage;
            pair_sign[(i, j)] = sign;
            pair_div[(i, j)] = div;
        }
    }

    let (permutation, _) = min_cost_assignment(&cost)?;
    let signs = permutation.iter().enumerate().map(|(i, &j)| pair_sign[(i, j)]).collect();
    let divergences = permutation.iter().enumerate().map(|(i, &j)| pair_div[(i, j)]).collect();
    Ok(Alignment {
        permutation,
        signs,
        scales: vec![1.0; d],
        divergences,
    })
}

fn correlation(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma).powi(2);
        sbb += (y - mb).powi(2);
    }
    if saa == 0.0 || sbb == 0.0 {
        0.0
    } else {
        sab / (saa * sbb).sqrt()
    }
}
