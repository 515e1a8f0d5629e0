//! Run manifests: enough metadata beside every output to replay the run.

use std::path::Path;

use serde::Serialize;

use sdbounds_core::Tolerances;

use crate::error::CliResult;
use crate::io::write_atomic;

#[derive(Serialize)]
pub struct RunManifest {
    /// Argv as invoked.
    pub command_line: Vec<String>,
    /// Resolved configuration of the subcommand.
    pub config: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub master_seed: Option<u64>,
    pub tool_version: &'static str,
    /// UTC, RFC 3339.
    pub timestamp: String,
    pub tolerances: Tolerances,
}

impl RunManifest {
    pub fn new(config: serde_json::Value, master_seed: Option<u64>) -> Self {
        RunManifest {
            command_line: std::env::args().collect(),
            config,
            master_seed,
            tool_version: env!("CARGO_PKG_VERSION"),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Micros, true),
            tolerances: Tolerances::DEFAULT,
        }
    }

    /// Writes `<subcommand>_manifest.json` into the output directory.
    pub fn write(&self, out_dir: &Path, subcommand: &str) -> CliResult<()> {
        let path = out_dir.join(format!("{}_manifest.json", subcommand.replace('-', "_")));
        let mut bytes = serde_json::to_vec_pretty(self).expect("manifest serializes");
        bytes.push(b'\n');
        write_atomic(&path, &bytes)
    }
}
