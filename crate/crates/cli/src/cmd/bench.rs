use rotshield_core::evaluate::synthetic::non_gaussian_sources;
use rotshield_core::io::read_dataset;
use rotshield_core::{run_figure1_sweep, SweepConfig};

use super::emit;
use crate::{resolve_seed, usage, BenchArgs};

pub fn run(args: &BenchArgs) -> anyhow::Result<()> {
    let base = resolve_seed(args.seed)?;
    let data = match (&args.synthetic, &args.input) {
        (Some(spec), _) => non_gaussian_sources(spec.d, spec.records, args.data_seed.unwrap_or(base))?,
        (None, Some(path)) => read_dataset(path)?,
        (None, None) => return usage("give --synthetic or --input"),
    };
    if let Some(&n) = args.ns.iter().find(|&&n| n == 0 || n > data.num_records()) {
        return usage(format!("--ns entry {n} must lie in 1..={}", data.num_records()));
    }
    let mut cfg = SweepConfig::new(args.ns.clone(), args.fractions.clone(), (base..base + args.seeds).collect());
    cfg.normalize = args.normalize;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = args.jobs {
        pool = pool.num_threads(jobs as usize);
    }
    let report = pool.build()?.install(|| run_figure1_sweep(&data, &cfg))?;

    let failed = report.cells.iter().filter(|c| c.error.is_some()).count();
    if failed > 0 {
        eprintln!("warning: {failed} cells failed");
    }
    emit(args.out.as_deref(), &report.to_csv())?;
    if let Some(path) = &args.summary {
        emit(Some(path), &(report.summary_json() + "\n"))?;
    }
    Ok(())
}
