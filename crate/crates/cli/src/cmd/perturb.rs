use std::path::PathBuf;

use rotshield_core::io::{read_dataset, write_dataset, write_text};
use rotshield_core::{difference_covariance, make_partitioning, normalize_to_unit, perturb, PerturbationKey};

use crate::{resolve_seed, same_path, usage, PerturbArgs};

fn default_meta_path(out: &std::path::Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.meta.json"))
}

pub fn run(args: &PerturbArgs) -> anyhow::Result<()> {
    let meta_path = args.meta.clone().unwrap_or_else(|| default_meta_path(&args.out));
    if !args.force {
        for (other, what) in [(&args.out, "released data"), (&meta_path, "metadata"), (&args.input, "input")] {
            if same_path(&args.key, other) {
                return usage(format!(
                    "key path {} is also the {what} path; pass --force to allow",
                    args.key.display()
                ));
            }
        }
    }
    if same_path(&args.out, &meta_path) {
        return usage("--out and --meta name the same file");
    }
    let seed = resolve_seed(args.seed)?;
    let raw = read_dataset(&args.input)?;
    let n = args.n as usize;
    if n > raw.num_records() {
        return usage(format!("--n {n} exceeds the {} records in {}", raw.num_records(), args.input.display()));
    }
    let x = if args.no_normalize { raw } else { normalize_to_unit(&raw)?.0 };

    let key = PerturbationKey::new(seed, make_partitioning(x.num_records(), n)?, x.num_attributes(), !args.no_normalize)?;
    let y = perturb(&x, &key)?;

    write_dataset(&args.out, &y)?;
    write_text(&args.key, &(key.to_json() + "\n"))?;
    let meta = serde_json::to_string_pretty(&key.public_metadata())?;
    write_text(&meta_path, &(meta + "\n"))?;

    eprintln!("warning: {} holds the secret key; do not publish it", args.key.display());
    let sizes: Vec<String> = key.partitioning().sizes().iter().map(usize::to_string).collect();
    println!("parts: {} (sizes {})", n, sizes.join(", "));
    println!("privacy score (difference covariance): {}", difference_covariance(&x, &y)?);
    Ok(())
}
