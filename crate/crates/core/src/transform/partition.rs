use std::ops::Range;

use crate::error::{Error, Result};

/// Contiguous split of record indices `[0, N)` into `n` parts whose sizes
/// differ by at most one; the first `N mod n` parts take the extra record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partitioning {
    boundaries: Vec<usize>,
}

pub fn make_partitioning(num_records: usize, num_parts: usize) -> Result<Partitioning> {
    if num_parts == 0 || num_parts > num_records {
        return Err(Error::InvalidInput(format!(
            "cannot split {num_records} records into {num_parts} parts"
        )));
    }
    let base = num_records / num_parts;
    let extra = num_records % num_parts;
    let mut boundaries = Vec::with_capacity(num_parts + 1);
    boundaries.push(0);
    let mut at = 0;
    for i in 0..num_parts {
        at += base + usize::from(i < extra);
        boundaries.push(at);
    }
    Ok(Partitioning { boundaries })
}

impl Partitioning {
    /// Validates externally supplied boundaries (e.g. from a key file).
    pub fn from_boundaries(boundaries: Vec<usize>) -> Result<Self> {
        if boundaries.len() < 2 || boundaries[0] != 0 {
            return Err(Error::InvalidInput(
                "boundaries must start at 0 and hold at least two entries".into(),
            ));
        }
        if boundaries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("boundaries must be strictly increasing".into()));
        }
        let p = Self { boundaries };
        let sizes: Vec<usize> = p.parts().map(|r| r.len()).collect();
        let (lo, hi) = (sizes.iter().min().unwrap(), sizes.iter().max().unwrap());
        if hi - lo > 1 {
            return Err(Error::InvalidInput(format!(
                "part sizes {sizes:?} differ by more than one"
            )));
        }
        Ok(p)
    }

    pub fn num_parts(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn num_records(&self) -> usize {
        *self.boundaries.last().unwrap()
    }

    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    pub fn part(&self, i: usize) -> Range<usize> {
        self.boundaries[i]..self.boundaries[i + 1]
    }

    pub fn parts(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        self.boundaries.windows(2).map(|w| w[0]..w[1])
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts().map(|r| r.len()).collect()
    }

    /// Index of the part holding `record`.
    pub fn part_of(&self, record: usize) -> usize {
        assert!(record < self.num_records());
        self.boundaries.partition_point(|&b| b <= record) - 1
    }
}
