use anyhow::bail;
use rotshield_core::evaluate::third_party_cluster;
use rotshield_core::io::read_dataset;

use super::{emit, read_meta};
use crate::{resolve_seed, ClusterArgs};

pub fn run(args: &ClusterArgs) -> anyhow::Result<()> {
    let seed = resolve_seed(args.seed)?;
    let a = read_dataset(&args.a)?;
    let b = read_dataset(&args.b)?;
    if a.shape() != b.shape() {
        bail!(
            "{} has {} attributes x {} records, {} has {} x {}",
            args.a.display(),
            a.num_attributes(),
            a.num_records(),
            args.b.display(),
            b.num_attributes(),
            b.num_records()
        );
    }
    let meta = read_meta(&args.meta)?;
    if meta.d != a.num_attributes() {
        bail!("metadata is for {} attributes, logs have {}", meta.d, a.num_attributes());
    }
    if !meta.normalization_applied {
        bail!("distances need a release of unit-normalized records");
    }
    let result = third_party_cluster(&a, &b, &meta.partitioning()?, args.k as usize, seed)?;

    let mut csv = String::from("slot,cluster\n");
    for (j, label) in result.assignments.iter().enumerate() {
        csv.push_str(&format!("{j},{label}\n"));
    }
    emit(args.out.as_deref(), &csv)?;
    let sizes: Vec<String> = result.cluster_sizes().iter().map(usize::to_string).collect();
    eprintln!("cluster sizes: {}", sizes.join(", "));
    Ok(())
}
