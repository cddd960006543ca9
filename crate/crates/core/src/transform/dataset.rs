use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Tolerance on `||record|| - 1` for a dataset flagged as unit-normalized.
pub const UNIT_NORM_TOL: f64 = 1e-9;

const ZERO_NORM: f64 = 1e-12;

/// `d` attributes by `N` records; each column is one record.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    values: Matrix,
    attribute_names: Vec<String>,
    unit_normalized: bool,
}

impl Dataset {
    /// Wraps a `d x N` matrix with default attribute names `x1..xd`.
    pub fn new(values: Matrix) -> Result<Self> {
        let names = (1..=values.rows()).map(|i| format!("x{i}")).collect();
        Self::with_names(values, names)
    }

    pub fn with_names(values: Matrix, attribute_names: Vec<String>) -> Result<Self> {
        if attribute_names.len() != values.rows() {
            return Err(Error::InvalidInput(format!(
                "{} attribute names for {} attributes",
                attribute_names.len(),
                values.rows()
            )));
        }
        if !values.all_finite() {
            return Err(Error::NonFinite("Dataset::new"));
        }
        Ok(Self {
            values,
            attribute_names,
            unit_normalized: false,
        })
    }

    /// Builds a dataset from records given as rows (the CSV layout).
    pub fn from_records<R: AsRef<[f64]>>(records: &[R]) -> Result<Self> {
        Self::new(Matrix::from_rows(records)?.transpose())
    }

    /// Marks the dataset as unit-normalized after checking every record norm.
    pub fn into_unit_normalized(mut self) -> Result<Self> {
        for j in 0..self.num_records() {
            let norm = self.record_norm(j);
            if (norm - 1.0).abs() > UNIT_NORM_TOL {
                return Err(Error::InvalidInput(format!(
                    "record {j} has norm {norm}, expected 1"
                )));
            }
        }
        self.unit_normalized = true;
        Ok(self)
    }

    pub(crate) fn with_flag(mut self, unit_normalized: bool) -> Self {
        self.unit_normalized = unit_normalized;
        self
    }

    pub fn num_attributes(&self) -> usize {
        self.values.rows()
    }

    pub fn num_records(&self) -> usize {
        self.values.cols()
    }

    pub fn is_unit_normalized(&self) -> bool {
        self.unit_normalized
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    pub fn matrix(&self) -> &Matrix {
        &self.values
    }

    pub fn into_matrix(self) -> Matrix {
        self.values
    }

    pub fn attribute(&self, i: usize) -> &[f64] {
        self.values.row(i)
    }

    pub fn record(&self, j: usize) -> Vec<f64> {
        self.values.column(j)
    }

    pub fn record_norm(&self, j: usize) -> f64 {
        (0..self.num_attributes())
            .map(|i| self.values[(i, j)].powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Records as rows: an `N x d` matrix.
    pub fn records_matrix(&self) -> Matrix {
        self.values.transpose()
    }

    /// Sub-dataset holding the listed records in the given order.
    pub fn select_records(&self, indices: &[usize]) -> Result<Dataset> {
        if let Some(&bad) = indices.iter().find(|&&j| j >= self.num_records()) {
            return Err(Error::InvalidInput(format!(
                "record index {bad} out of range for {} records",
                self.num_records()
            )));
        }
        Ok(Dataset {
            values: self.values.select_columns(indices),
            attribute_names: self.attribute_names.clone(),
            unit_normalized: self.unit_normalized,
        })
    }

    /// Same shape and names, new values; the unit flag is cleared.
    pub fn with_values(&self, values: Matrix) -> Result<Dataset> {
        if values.shape() != self.values.shape() {
            return Err(Error::DimensionMismatch {
                op: "Dataset::with_values",
                left: self.values.shape(),
                right: values.shape(),
            });
        }
        Dataset::with_names(values, self.attribute_names.clone())
    }

    pub fn shape(&self) -> (usize, usize) {
        self.values.shape()
    }
}

/// Scales every record to unit Euclidean length.
///
/// Returns the normalized dataset and the original record norms. The norms
/// are owner-side secrets: they are needed to undo the normalization and are
/// never part of a release.
pub fn normalize_to_unit(x: &Dataset) -> Result<(Dataset, Vec<f64>)> {
    let (d, n) = x.shape();
    let mut out = x.values.clone();
    let mut norms = Vec::with_capacity(n);
    for j in 0..n {
        let norm = x.record_norm(j);
        if norm < ZERO_NORM {
            return Err(Error::ZeroNormRecord { index: j });
        }
        for i in 0..d {
            out[(i, j)] /= norm;
        }
        norms.push(norm);
    }
    let normalized = Dataset {
        values: out,
        attribute_names: x.attribute_names.clone(),
        unit_normalized: true,
    };
    Ok((normalized, norms))
}
