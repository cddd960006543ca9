use rotshield_core::io::read_dataset;
use rotshield_core::{difference_covariance, normalize_to_unit, run_experiment1};

use crate::{resolve_seed, KdeArgs, PrivacyArgs};

pub fn kde(args: &KdeArgs) -> anyhow::Result<()> {
    let base = resolve_seed(args.seed)?;
    let runs = (base..base + args.seeds)
        .map(|s| run_experiment1(args.records, args.fraction, s))
        .collect::<Result<Vec<_>, _>>()?;
    let mean = runs.iter().map(|r| r.similarity).sum::<f64>() / runs.len() as f64;
    let out = serde_json::json!({ "mean_similarity": mean, "runs": runs });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

pub fn privacy(args: &PrivacyArgs) -> anyhow::Result<()> {
    let mut x = read_dataset(&args.original)?;
    if args.normalize {
        x = normalize_to_unit(&x)?.0;
    }
    let y = read_dataset(&args.released)?;
    println!("{}", difference_covariance(&x, &y)?);
    Ok(())
}
