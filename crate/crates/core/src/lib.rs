//! Rotation-based data perturbation for privacy-preserving clustering.
//!
//! The crate covers four layers:
//!
//! * [`linalg`]: the small dense kernel (Householder QR, Jacobi eigensolver,
//!   Haar-random orthogonal matrices).
//! * [`transform`]: single-rotation (RBT) and multiple-rotation (MRBT)
//!   perturbation of record sets, plus the inner-product and distance services
//!   a third party can compute on released data.
//! * [`attack`]: the a-priori-knowledge ICA reconstruction attack (whitening,
//!   FastICA, Gaussian KDE, total-variation alignment, bound rescaling).
//! * [`evaluate`]: k-means utility checks and the experiment runners.
//!
//! Data follow the column convention `Y = R X`: a [`Dataset`] is a
//! `d x N` matrix whose columns are records.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assignment;
pub mod attack;
pub mod error;
pub mod evaluate;
pub mod io;
pub mod linalg;
pub mod rng;
pub mod transform;

pub use attack::{
    ak_ica_attack, align_components, density_divergence, fast_ica, kde_fit,
    reconstruction_accuracy, rescale_to_bounds, whiten, Alignment, AttackConfig, AttackReport,
    Bounds, DivergenceConfig, IcaConfig, IcaResult, KdeModel, Whitened,
};
pub use error::{Error, Result};
pub use evaluate::{
    cluster_agreement, kmeans, run_application3, run_experiment1, run_figure1_sweep,
    ClusteringResult, SweepCell, SweepConfig, SweepReport,
};
pub use linalg::{
    frobenius_norm, mat_mul, qr_decompose, random_orthogonal, sym_eig, Matrix, RotationMatrix,
};
pub use transform::{
    corresponding_distances, difference_covariance, distance_from_inner, inner_product_block,
    make_partitioning, normalize_to_unit, perturb, Dataset, Partitioning, PerturbationKey,
};
