//! Per-fixture estimator settings and tolerances.
//!
//! ```json
//! { "fixtures": { "cantor.json": { "depth": 10, "ladder": "3:1..3:2..7",
//!     "tolerance": { "lower": 0.05, "box": 0.05, "assouad": 0.05 } } } }
//! ```
//!
//! Entries are keyed by input file name.  Tolerances are choices of the
//! harness; no finite-scale estimate is guaranteed to be near the limit.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::Context as _;
use serde::Deserialize;

/// Slack in `box <= assouad + slack` when a manifest does not say.
pub const DEFAULT_ORDERING_TOLERANCE: f64 = 0.05;

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub lower: Option<f64>,
    #[serde(rename = "box")]
    pub box_dim: Option<f64>,
    pub assouad: Option<f64>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub depth: Option<usize>,
    pub ladder: Option<String>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub tolerance: Tolerances,
    pub ordering_tolerance: Option<f64>,
    /// Free text explaining the tolerances.
    pub rationale: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Manifest {
    #[serde(default)]
    pub note: Option<String>,
    pub fixtures: BTreeMap<String, Entry>,
}

pub fn load(path: &Path) -> anyhow::Result<Manifest> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading manifest {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))
}

/// The entry for `input`, from `manifest` if given (a missing entry is then
/// fine), otherwise from `manifest.json` beside the input if that exists.
pub fn lookup(input: &Path, manifest: Option<&Path>) -> anyhow::Result<Option<Entry>> {
    let implicit;
    let path = match manifest {
        Some(p) => p,
        None => {
            implicit = input.with_file_name("manifest.json");
            if !implicit.is_file() {
                return Ok(None);
            }
            implicit.as_path()
        }
    };
    let m = load(path)?;
    let Some(name) = input.file_name().and_then(|n| n.to_str()) else {
        return Ok(None);
    };
    Ok(m.fixtures.get(name).cloned())
}
