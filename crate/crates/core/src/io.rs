//! Dataset CSV files: a header row of attribute names, then one record per
//! row with one numeric value per attribute. Values are written with Rust's
//! shortest round-trip float formatting, so write-then-read is exact and
//! output bytes are deterministic.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::transform::Dataset;

pub fn read_dataset(path: &Path) -> Result<Dataset> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_dataset_from(file, path)
}

/// Parses CSV from any reader; `path` only labels diagnostics.
pub fn read_dataset_from<R: Read>(reader: R, path: &Path) -> Result<Dataset> {
    let csv_err = |row: usize, column: usize, message: String| Error::Csv {
        path: path.to_path_buf(),
        row,
        column,
        message,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| csv_err(1, 1, e.to_string()))?
        .clone();
    let names: Vec<String> = headers.iter().map(str::to_owned).collect();
    if names.is_empty() || names.iter().all(String::is_empty) {
        return Err(csv_err(1, 1, "missing header row".into()));
    }
    if let Some(col) = names.iter().position(String::is_empty) {
        return Err(csv_err(1, col + 1, "empty attribute name".into()));
    }
    let d = names.len();

    let mut values: Vec<f64> = Vec::new();
    let mut n = 0usize;
    for (i, result) in rdr.records().enumerate() {
        let record = result.map_err(|e| {
            let row = e.position().map_or(i + 2, |p| p.line() as usize);
            csv_err(row, 1, e.to_string())
        })?;
        let row = record.position().map_or(i + 2, |p| p.line() as usize);
        if record.len() != d {
            return Err(csv_err(
                row,
                record.len().min(d) + 1,
                format!("expected {d} fields, found {}", record.len()),
            ));
        }
        for (c, field) in record.iter().enumerate() {
            if field.is_empty() {
                return Err(csv_err(row, c + 1, "missing value".into()));
            }
            let v: f64 = field
                .parse()
                .map_err(|_| csv_err(row, c + 1, format!("not a number: {field:?}")))?;
            if !v.is_finite() {
                return Err(csv_err(row, c + 1, format!("non-finite value: {field:?}")));
            }
            values.push(v);
        }
        n += 1;
    }
    if n == 0 {
        return Err(csv_err(2, 1, "no records".into()));
    }
    let records = Matrix::from_vec(n, d, values)?;
    Dataset::with_names(records.transpose(), names)
}

pub fn write_dataset(path: &Path, x: &Dataset) -> Result<()> {
    let mut file = File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    file.write_all(dataset_to_csv(x).as_bytes())
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
}

pub fn dataset_to_csv(x: &Dataset) -> String {
    let mut out = String::new();
    out.push_str(&x.attribute_names().join(","));
    out.push('\n');
    let m = x.matrix();
    for j in 0..x.num_records() {
        let row: Vec<String> = (0..x.num_attributes()).map(|i| format!("{}", m[(i, j)])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
