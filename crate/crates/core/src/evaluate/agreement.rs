use crate::assignment::max_weight_assignment;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

use super::ClusteringResult;

/// Fraction of records labelled alike under the best one-to-one relabelling
/// of `b`'s clusters onto `a`'s.
pub fn cluster_agreement(a: &ClusteringResult, b: &ClusteringResult) -> Result<f64> {
    let n = a.assignments.len();
    if b.assignments.len() != n || a.k != b.k {
        return Err(Error::InvalidInput(format!(
            "cannot compare {n} records / k = {} with {} records / k = {}",
            a.k,
            b.assignments.len(),
            b.k
        )));
    }
    if n == 0 {
        return Err(Error::InvalidInput("no records to compare".into()));
    }
    let mut table = Matrix::zeros(a.k, a.k);
    for (&la, &lb) in a.assignments.iter().zip(&b.assignments) {
        table[(la, lb)] += 1.0;
    }
    let (_, matched) = max_weight_assignment(&table)?;
    Ok(matched / n as f64)
}
