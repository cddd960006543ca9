use std::path::Path;

use anyhow::{bail, Context};
use rotshield_core::attack::Bounds;
use rotshield_core::evaluate::{cell_attack_config, known_indices};
use rotshield_core::io::{read_dataset, read_text, write_dataset};
use rotshield_core::{ak_ica_attack, normalize_to_unit, AttackConfig, Dataset};

use super::{emit, read_meta};
use crate::{resolve_seed, usage, AttackArgs};

fn parse_bounds(s: &str) -> anyhow::Result<Bounds> {
    let mut out = Vec::new();
    for (i, part) in s.split(',').enumerate() {
        let parsed = part
            .split_once(':')
            .and_then(|(lo, hi)| Some((lo.trim().parse::<f64>().ok()?, hi.trim().parse::<f64>().ok()?)));
        match parsed {
            Some((lo, hi)) if lo.is_finite() && hi.is_finite() && hi > lo => out.push((lo, hi)),
            _ => return usage(format!("bound {} `{part}` is not lo:hi with lo < hi", i + 1)),
        }
    }
    Ok(Bounds(out))
}

fn parse_indices(path: &Path) -> anyhow::Result<Vec<usize>> {
    let text = read_text(path)?;
    let mut out = Vec::new();
    for (line, content) in text.lines().enumerate() {
        for token in content.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let j = token
                .parse()
                .with_context(|| format!("{}:{}: `{token}` is not a record index", path.display(), line + 1))?;
            out.push(j);
        }
    }
    Ok(out)
}

fn load(path: &Path, normalize: bool) -> anyhow::Result<Dataset> {
    let x = read_dataset(path)?;
    Ok(if normalize { normalize_to_unit(&x)?.0 } else { x })
}

pub fn run(args: &AttackArgs) -> anyhow::Result<()> {
    let seed = resolve_seed(args.seed)?;
    let released = read_dataset(&args.released)?;
    let normalize = match &args.meta {
        Some(p) => {
            let meta = read_meta(p)?;
            if meta.d != released.num_attributes() || meta.boundaries.last() != Some(&released.num_records()) {
                bail!("{} does not describe {}", p.display(), args.released.display());
            }
            meta.normalization_applied || args.normalize
        }
        None => args.normalize,
    };
    let truth = args.truth.as_deref().map(|p| load(p, normalize)).transpose()?;

    let (known_original, indices, source_bounds) = match (&args.indices, args.fraction) {
        (Some(idx_path), None) => {
            let Some(known_path) = &args.known else {
                return usage("--indices needs --known");
            };
            (load(known_path, normalize)?, parse_indices(idx_path)?, None)
        }
        (None, Some(fraction)) => {
            let source = match (&args.known, &truth) {
                (Some(p), _) => load(p, normalize)?,
                (None, Some(t)) => t.clone(),
                (None, None) => return usage("--fraction needs --known or --truth as the record source"),
            };
            if source.shape() != released.shape() {
                bail!(
                    "record source has shape {:?} but the release has {:?}",
                    source.shape(),
                    released.shape()
                );
            }
            let idx = known_indices(source.num_records(), fraction, seed);
            let bounds = Bounds::from_dataset(&source);
            (source.select_records(&idx)?, idx, Some(bounds))
        }
        _ => return usage("give exactly one of --indices or --fraction"),
    };

    let bounds = match (&args.bounds, &args.bounds_from, source_bounds) {
        (Some(s), _, _) => parse_bounds(s)?,
        (None, Some(p), _) => Bounds::from_dataset(&load(p, normalize)?),
        (None, None, Some(b)) => b,
        (None, None, None) => bail!("no attribute bounds: pass --bounds or --bounds-from"),
    };
    if bounds.len() != released.num_attributes() {
        bail!("{} bounds for {} attributes", bounds.len(), released.num_attributes());
    }

    let cfg = cell_attack_config(&AttackConfig::default(), seed);
    let mut report = ak_ica_attack(&released, &known_original, &indices, &bounds, &cfg)?;
    if let Some(t) = &truth {
        report.score(t)?;
    }
    if let Some(out) = &args.out {
        write_dataset(out, &report.reconstructed)?;
    }
    if !report.converged() {
        eprintln!("warning: ICA did not converge; see `converged` in the report");
    }
    let json = serde_json::to_string_pretty(&report.summary())? + "\n";
    emit(args.report.as_deref(), &json)
}
