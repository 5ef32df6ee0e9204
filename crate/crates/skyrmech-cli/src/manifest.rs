//! Run manifests: enough provenance to re-run a scenario bit-identically.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::Config;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub scenario: String,
    /// sha256 of the resolved config's canonical TOML rendering.
    pub config_sha256: String,
    /// The resolved configuration itself (re-parses to an equal Config).
    pub config: Config,
    /// filename -> sha256 of the emitted bytes.
    pub outputs: BTreeMap<String, String>,
    pub wall_ms: u128,
    /// Numeric tolerances that were in force.
    pub tolerances: BTreeMap<String, f64>,
    /// Truncation/grid sizes that were in force.
    pub truncations: BTreeMap<String, i64>,
    pub notes: Vec<String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    hex::encode(h.finalize())
}

pub fn config_hash(config: &Config) -> String {
    sha256_hex(config.to_toml().as_bytes())
}

impl RunManifest {
    pub fn new(scenario: &str, config: &Config) -> Self {
        let mut tolerances = BTreeMap::new();
        tolerances.insert("quadrature_rel_tol".into(), 1e-9);
        tolerances.insert("ode_rtol_density".into(), 1e-9);
        tolerances.insert("ode_rtol_pure_state".into(), 1e-11);
        tolerances.insert("hermiticity_tol".into(), skyrmech::operators::HERMITICITY_TOL);
        let mut truncations = BTreeMap::new();
        truncations.insert(
            "bound_state_k_points".into(),
            skyrmech::topo::BOUND_STATE_K_POINTS as i64,
        );
        truncations.insert("fig3_n_max".into(), config.fig3.n_max as i64);
        truncations.insert("fig4_n_max".into(), config.fig4.n_max as i64);
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            scenario: scenario.to_string(),
            config_sha256: config_hash(config),
            config: config.clone(),
            outputs: BTreeMap::new(),
            wall_ms: 0,
            tolerances,
            truncations,
            notes: Vec::new(),
        }
    }

    pub fn record_output(&mut self, name: &str, content: &str) {
        self.outputs
            .insert(name.to_string(), sha256_hex(content.as_bytes()));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn write(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::write(dir.join("run_manifest.json"), self.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_config_round_trips() {
        let cfg = Config::default();
        let m = RunManifest::new("budget", &cfg);
        let json = m.to_json();
        let back: RunManifest = serde_json::from_str(&json).unwrap();
        assert_eq!(back.config, cfg);
        assert_eq!(back.config_sha256, config_hash(&cfg));
    }

    #[test]
    fn hash_tracks_config_changes() {
        let cfg = Config::default();
        let other = cfg.with_override("chain.delta", "-0.9").unwrap();
        assert_ne!(config_hash(&cfg), config_hash(&other));
    }
}
