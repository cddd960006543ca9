//! Utility and privacy evaluation.

mod agreement;
mod experiments;
mod kmeans;
mod sweep;
pub mod synthetic;

pub use agreement::cluster_agreement;
pub use experiments::{
    application3_plaintext, run_application3, run_experiment1, third_party_cluster,
    Experiment1Report,
};
pub use kmeans::{kmeans, ClusteringResult};
pub use sweep::{
    cell_attack_config, cell_key, known_indices, run_figure1_sweep, run_sweep_cell, SweepCell, SweepConfig,
    SweepReport, SweepSummaryRow, SWEEP_CSV_HEADER,
};
