pub mod attack;
pub mod bench;
pub mod cluster;
pub mod evaluate;
pub mod perturb;

use std::path::Path;

use anyhow::Context;
use rotshield_core::io::read_text;
use rotshield_core::transform::PublicMetadata;

pub fn read_meta(path: &Path) -> anyhow::Result<PublicMetadata> {
    let text = read_text(path)?;
    serde_json::from_str(&text).with_context(|| format!("{}: malformed metadata", path.display()))
}

/// Writes to `path`, or stdout when `None`.
pub fn emit(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => Ok(rotshield_core::io::write_text(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
