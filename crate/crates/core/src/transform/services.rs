//! Computations a third party can run on released data.

use crate::error::{Error, Result};
use crate::linalg::Matrix;

use super::{Dataset, Partitioning};

const INNER_PRODUCT_SLACK: f64 = 1e-9;

/// All `n x n` blocks of record-pair inner products between two datasets
/// released under the same key.
///
/// Block `(i, j)` holds `Y'_i^T Y''_j` (rows: records of part `i` in `y1`,
/// columns: records of part `j` in `y2`). Only diagonal blocks reproduce the
/// original inner products; off-diagonal blocks mix two different rotations.
#[derive(Clone, Debug)]
pub struct BlockInnerProducts {
    num_parts: usize,
    blocks: Vec<Matrix>,
}

impl BlockInnerProducts {
    pub fn num_parts(&self) -> usize {
        self.num_parts
    }

    pub fn block(&self, i: usize, j: usize) -> &Matrix {
        &self.blocks[i * self.num_parts + j]
    }

    /// Whether block `(i, j)` equals the corresponding original-data block.
    pub fn is_distance_faithful(&self, i: usize, j: usize) -> bool {
        i == j
    }

    /// Reassembles the full `N x N` matrix.
    pub fn to_full(&self, partitioning: &Partitioning) -> Matrix {
        let n = partitioning.num_records();
        let mut full = Matrix::zeros(n, n);
        for (i, ri) in partitioning.parts().enumerate() {
            for (j, rj) in partitioning.parts().enumerate() {
                let b = self.block(i, j);
                for (a, row) in ri.clone().enumerate() {
                    for (c, col) in rj.clone().enumerate() {
                        full[(row, col)] = b[(a, c)];
                    }
                }
            }
        }
        full
    }
}

fn check_pair(y1: &Dataset, y2: &Dataset, p: &Partitioning) -> Result<()> {
    if y1.shape() != y2.shape() {
        return Err(Error::DimensionMismatch {
            op: "released pair",
            left: y1.shape(),
            right: y2.shape(),
        });
    }
    if p.num_records() != y1.num_records() {
        return Err(Error::PartitionMismatch(format!(
            "partitioning covers {} records, datasets have {}",
            p.num_records(),
            y1.num_records()
        )));
    }
    Ok(())
}

pub fn inner_product_block(y1: &Dataset, y2: &Dataset, p: &Partitioning) -> Result<BlockInnerProducts> {
    check_pair(y1, y2, p)?;
    let n = p.num_parts();
    let mut blocks = Vec::with_capacity(n * n);
    for ri in p.parts() {
        let left = y1.matrix().columns(ri).transpose();
        for rj in p.parts() {
            blocks.push(left.matmul(&y2.matrix().columns(rj))?);
        }
    }
    Ok(BlockInnerProducts { num_parts: n, blocks })
}

/// Distance between two unit vectors from their inner product:
/// `sqrt(2 - 2 <u, v>)`.
/// Gaps `1 - ip` this small are rounding noise between identical records.
const IDENTICAL_GAP: f64 = 8.0 * f64::EPSILON;

pub fn distance_from_inner(ip: f64) -> Result<f64> {
    if !ip.is_finite() || ip.abs() > 1.0 + INNER_PRODUCT_SLACK {
        return Err(Error::InnerProductOutOfRange(ip));
    }
    let gap = 1.0 - ip.clamp(-1.0, 1.0);
    if gap <= IDENTICAL_GAP {
        return Ok(0.0);
    }
    Ok((2.0 * gap).sqrt())
}

/// Distance between record `j` of `y1` and record `j` of `y2`, for every `j`.
pub fn corresponding_distances(y1: &Dataset, y2: &Dataset, p: &Partitioning) -> Result<Vec<f64>> {
    check_pair(y1, y2, p)?;
    let (a, b) = (y1.matrix(), y2.matrix());
    (0..y1.num_records())
        .map(|j| {
            let ip: f64 = (0..y1.num_attributes()).map(|i| a[(i, j)] * b[(i, j)]).sum();
            distance_from_inner(ip)
        })
        .collect()
}

/// Privacy score: mean over attributes of the (population) variance of the
/// per-record displacement `y - x`. Zero means no displacement.
pub fn difference_covariance(x: &Dataset, y: &Dataset) -> Result<f64> {
    if x.shape() != y.shape() {
        return Err(Error::DimensionMismatch {
            op: "difference_covariance",
            left: x.shape(),
            right: y.shape(),
        });
    }
    let (d, n) = x.shape();
    if d == 0 || n == 0 {
        return Err(Error::InvalidInput("empty dataset".into()));
    }
    let total: f64 = (0..d)
        .map(|i| {
            let diffs: Vec<f64> = x.attribute(i).iter().zip(y.attribute(i)).map(|(a, b)| b - a).collect();
            let mean = diffs.iter().sum::<f64>() / n as f64;
            diffs.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64
        })
        .sum();
    Ok(total / d as f64)
}
