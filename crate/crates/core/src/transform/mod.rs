//! Single- and multiple-rotation perturbation of record sets.
//!
//! The owner normalizes every record to unit length, splits the records into
//! `n` contiguous parts, and rotates part `i` with its own secret orthogonal
//! matrix. With `n = 1` this is plain rotation-based perturbation and every
//! pairwise distance survives; with `n > 1` only distances and inner products
//! between records of the same part, or between corresponding records of two
//! datasets perturbed under one key, are preserved.

mod dataset;
mod key;
mod partition;
mod perturb;
mod services;

pub use dataset::{normalize_to_unit, Dataset, UNIT_NORM_TOL};
pub use key::{KeyFile, PerturbationKey, PublicMetadata, KEY_FORMAT_VERSION};
pub use partition::{make_partitioning, Partitioning};
pub use perturb::{invert, perturb, perturb_with};
pub use services::{
    corresponding_distances, difference_covariance, distance_from_inner, inner_product_block,
    BlockInnerProducts,
};
