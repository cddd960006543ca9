use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{random_orthogonal, RotationMatrix};
use crate::rng::derive_seed;

use super::Partitioning;

pub const KEY_FORMAT_VERSION: u32 = 1;

/// Secret material for one perturbation: the master seed from which every
/// part's rotation is derived, plus the record partitioning.
///
/// Part `i` is rotated by `random_orthogonal(d, derive_seed(master_seed, i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbationKey {
    master_seed: u64,
    partitioning: Partitioning,
    part_seeds: Vec<u64>,
    dim: usize,
    normalization_applied: bool,
}

impl PerturbationKey {
    pub fn new(
        master_seed: u64,
        partitioning: Partitioning,
        dim: usize,
        normalization_applied: bool,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("key dimension must be >= 1".into()));
        }
        let part_seeds = (0..partitioning.num_parts() as u64)
            .map(|i| derive_seed(master_seed, i))
            .collect();
        Ok(Self {
            master_seed,
            partitioning,
            part_seeds,
            dim,
            normalization_applied,
        })
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn partitioning(&self) -> &Partitioning {
        &self.partitioning
    }

    pub fn part_seeds(&self) -> &[u64] {
        &self.part_seeds
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normalization_applied(&self) -> bool {
        self.normalization_applied
    }

    pub fn rotation(&self, part: usize) -> Result<RotationMatrix> {
        random_orthogonal(self.dim, self.part_seeds[part])
    }

    pub fn to_file(&self) -> KeyFile {
        KeyFile {
            version: KEY_FORMAT_VERSION,
            master_seed: self.master_seed,
            n: self.partitioning.num_parts(),
            boundaries: self.partitioning.boundaries().to_vec(),
            d: self.dim,
            normalization_applied: self.normalization_applied,
        }
    }

    pub fn from_file(file: &KeyFile) -> Result<Self> {
        if file.version != KEY_FORMAT_VERSION {
            return Err(Error::KeyFormat(format!(
                "unsupported version {} (expected {KEY_FORMAT_VERSION})",
                file.version
            )));
        }
        let partitioning = file.partitioning()?;
        Self::new(file.master_seed, partitioning, file.d, file.normalization_applied)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("key serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: KeyFile =
            serde_json::from_str(text).map_err(|e| Error::KeyFormat(e.to_string()))?;
        Self::from_file(&file)
    }

    /// The non-secret part that accompanies released data.
    pub fn public_metadata(&self) -> PublicMetadata {
        PublicMetadata {
            version: KEY_FORMAT_VERSION,
            n: self.partitioning.num_parts(),
            boundaries: self.partitioning.boundaries().to_vec(),
            d: self.dim,
            normalization_applied: self.normalization_applied,
        }
    }
}

/// On-disk form of a [`PerturbationKey`]. Secret.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeyFile {
    pub version: u32,
    pub master_seed: u64,
    pub n: usize,
    pub boundaries: Vec<usize>,
    pub d: usize,
    pub normalization_applied: bool,
}

impl KeyFile {
    fn partitioning(&self) -> Result<Partitioning> {
        if self.boundaries.len() != self.n + 1 {
            return Err(Error::KeyFormat(format!(
                "n = {} but {} boundaries",
                self.n,
                self.boundaries.len()
            )));
        }
        Partitioning::from_boundaries(self.boundaries.clone())
            .map_err(|e| Error::KeyFormat(e.to_string()))
    }
}

/// Partition layout published next to released data. Carries no seeds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PublicMetadata {
    pub version: u32,
    pub n: usize,
    pub boundaries: Vec<usize>,
    pub d: usize,
    pub normalization_applied: bool,
}

impl PublicMetadata {
    pub fn partitioning(&self) -> Result<Partitioning> {
        if self.boundaries.len() != self.n + 1 {
            return Err(Error::InvalidInput(format!(
                "metadata n = {} but {} boundaries",
                self.n,
                self.boundaries.len()
            )));
        }
        Partitioning::from_boundaries(self.boundaries.clone())
    }
}
