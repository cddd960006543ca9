//! Command-line driver for `rotshield`.
//!
//! Exit codes: 0 on success, 1 on runtime failure, 2 on usage errors.

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod cmd;

/// Environment variable supplying the seed when `--seed` is absent.
pub const SEED_ENV: &str = "ROTSHIELD_SEED";

#[derive(Debug, Parser)]
#[command(name = "rotshield", version, about = "Rotation perturbation for privacy-preserving clustering")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rotate a dataset part by part and write the release, key and metadata.
    Perturb(PerturbArgs),
    /// Reconstruct a release with the AK-ICA attack.
    Attack(AttackArgs),
    /// KDE extrapolation and privacy-score evaluations.
    #[command(subcommand)]
    Evaluate(EvaluateCommand),
    /// Accuracy sweep over partition counts, known fractions and seeds.
    Bench(BenchArgs),
    /// Third-party clustering of corresponding-record distances.
    Cluster(ClusterArgs),
}

#[derive(Debug, Args)]
pub struct PerturbArgs {
    /// Input CSV: header of attribute names, one record per row.
    #[arg(long)]
    pub input: PathBuf,
    /// Number of parts.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
    /// Secret key JSON.
    #[arg(long)]
    pub key: PathBuf,
    /// Public metadata JSON [default: <out stem>.meta.json].
    #[arg(long)]
    pub meta: Option<PathBuf>,
    /// Rotate the raw records instead of unit-normalized ones.
    #[arg(long)]
    pub no_normalize: bool,
    /// Allow the key to be written over a data or metadata path.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct AttackArgs {
    /// Released (perturbed) CSV.
    #[arg(long)]
    pub released: PathBuf,
    /// Original records known to the attacker. With --indices, row t is the
    /// original of released record indices[t]; with --fraction, the full
    /// original dataset to draw the known records from.
    #[arg(long)]
    pub known: Option<PathBuf>,
    /// Zero-based record indices of the known originals, one per line.
    #[arg(long, conflicts_with = "fraction")]
    pub indices: Option<PathBuf>,
    /// Draw this share of records as known, seeded by --seed.
    #[arg(long, value_parser = parse_fraction)]
    pub fraction: Option<f64>,
    /// Ground truth for scoring; also the known-record source when --known
    /// is absent.
    #[arg(long)]
    pub truth: Option<PathBuf>,
    /// Attribute bounds as `lo:hi,lo:hi,...`.
    #[arg(long, conflicts_with = "bounds_from")]
    pub bounds: Option<String>,
    /// Take attribute bounds from the min and max of this CSV.
    #[arg(long)]
    pub bounds_from: Option<PathBuf>,
    /// Public metadata of the release; its normalization flag is honored.
    #[arg(long)]
    pub meta: Option<PathBuf>,
    /// Treat the release as built from unit-normalized records.
    #[arg(long)]
    pub normalize: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Reconstructed CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report JSON [default: stdout].
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum EvaluateCommand {
    /// Similarity of a subsample KDE to the full-sample KDE on N(0, 1) data.
    Kde(KdeArgs),
    /// Difference-covariance privacy score between original and release.
    Privacy(PrivacyArgs),
}

#[derive(Debug, Args)]
pub struct KdeArgs {
    #[arg(long, default_value_t = 10_000)]
    pub records: usize,
    #[arg(long, value_parser = parse_unit_fraction)]
    pub fraction: f64,
    /// Number of seeds, counted up from --seed.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub seeds: u64,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct PrivacyArgs {
    #[arg(long)]
    pub original: PathBuf,
    #[arg(long)]
    pub released: PathBuf,
    /// Unit-normalize the original before comparing.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub ns: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true, num_args = 1.., value_parser = parse_fraction)]
    pub fractions: Vec<f64>,
    /// Number of seeds, counted up from --seed.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub seeds: u64,
    /// Built-in benchmark data, e.g. `d=3,N=5000`.
    #[arg(long, value_parser = parse_synthetic, conflicts_with = "input", required_unless_present = "input")]
    pub synthetic: Option<SyntheticSpec>,
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Seed of the synthetic data [default: --seed].
    #[arg(long)]
    pub data_seed: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Unit-normalize records before perturbing.
    #[arg(long)]
    pub normalize: bool,
    /// Worker threads [default: available parallelism].
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Per-cell CSV [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-(n, fraction) summary JSON.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// First perturbed log.
    #[arg(long)]
    pub a: PathBuf,
    /// Second perturbed log, released under the same key.
    #[arg(long)]
    pub b: PathBuf,
    /// Public metadata written by `perturb`.
    #[arg(long)]
    pub meta: PathBuf,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Assignments CSV [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SyntheticSpec {
    pub d: usize,
    pub records: usize,
}

fn parse_fraction(s: &str) -> Result<f64, String> {
    let f: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if f > 0.0 && f < 1.0 {
        Ok(f)
    } else {
        Err(format!("fraction must lie in (0, 1), got {f}"))
    }
}

fn parse_unit_fraction(s: &str) -> Result<f64, String> {
    let f: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if f > 0.0 && f <= 1.0 {
        Ok(f)
    } else {
        Err(format!("fraction must lie in (0, 1], got {f}"))
    }
}

fn parse_synthetic(s: &str) -> Result<SyntheticSpec, String> {
    let (mut d, mut records) = (None, None);
    for part in s.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got `{part}`"))?;
        let v: usize = v.trim().parse().map_err(|_| format!("`{v}` is not a count"))?;
        match k.trim() {
            "d" => d = Some(v),
            "N" => records = Some(v),
            other => return Err(format!("unknown key `{other}`, expected d or N")),
        }
    }
    match (d, records) {
        (Some(d), Some(records)) if d >= 2 && records >= 1 => Ok(SyntheticSpec { d, records }),
        (Some(_), Some(_)) => Err("need d >= 2 and N >= 1".into()),
        _ => Err("expected d=<int>,N=<int>".into()),
    }
}

/// A failure caused by the invocation rather than the data; exits with 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub(crate) fn usage<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(UsageError(msg.into()).into())
}

/// `flag`, else `ROTSHIELD_SEED`, else 0.
pub fn resolve_seed(flag: Option<u64>) -> anyhow::Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("{SEED_ENV}=`{v}` is not an unsigned integer")).into()),
        Err(_) => Ok(0),
    }
}

pub(crate) fn same_path(a: &Path, b: &Path) -> bool {
    match (std::path::absolute(a), std::path::absolute(b)) {
        (Ok(a), Ok(b)) => a == b,
        _ => a == b,
    }
}

pub fn execute(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Perturb(args) => cmd::perturb::run(&args),
        Command::Attack(args) => cmd::attack::run(&args),
        Command::Evaluate(EvaluateCommand::Kde(args)) => cmd::evaluate::kde(&args),
        Command::Evaluate(EvaluateCommand::Privacy(args)) => cmd::evaluate::privacy(&args),
        Command::Bench(args) => cmd::bench::run(&args),
        Command::Cluster(args) => cmd::cluster::run(&args),
    }
}

/// Parses `args` (program name first), runs the command and maps the outcome
/// to an exit code, printing diagnostics to stderr.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions() {
        assert_eq!(parse_fraction("0.1"), Ok(0.1));
        assert!(parse_fraction("1.5").is_err());
        assert!(parse_fraction("0").is_err());
        assert!(parse_fraction("x").is_err());
        assert_eq!(parse_unit_fraction("1.0"), Ok(1.0));
    }

    #[test]
    fn synthetic_spec() {
        assert_eq!(parse_synthetic("d=3,N=5000"), Ok(SyntheticSpec { d: 3, records: 5000 }));
        assert!(parse_synthetic("d=3").is_err());
        assert!(parse_synthetic("d=1,N=10").is_err());
        assert!(parse_synthetic("q=3,N=10").is_err());
    }

    #[test]
    fn cli_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
