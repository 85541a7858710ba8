//! Run manifests: enough metadata to reproduce a run directory.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub schema_version: u32,
    /// sha256 over the canonicalized config text
    pub config_hash: String,
    pub seed: u64,
    pub version: String,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn start(canonical_config: &str, seed: u64) -> Self {
        RunManifest {
            schema_version: 1,
            config_hash: config_hash(canonical_config),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            started_unix_ms: now_ms(),
            finished_unix_ms: 0,
            outputs: Vec::new(),
        }
    }

    pub fn finish(&mut self, outputs: Vec<String>) {
        self.finished_unix_ms = now_ms();
        self.outputs = outputs;
    }
}

pub fn config_hash(canonical: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn now_ms() -> u128 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_deterministic_over_the_text() {
        assert_eq!(config_hash("a = 1\n"), config_hash("a = 1\n"));
        assert_ne!(config_hash("a = 1\n"), config_hash("a = 2\n"));
    }
}
