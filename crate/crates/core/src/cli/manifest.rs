use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::CliError;

pub const MANIFEST_PREFIX: &str = "# manifest: ";

/// Everything needed to regenerate a run's outputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    /// Subcommand and positional arguments, e.g. `["verify", "boost"]`.
    pub command: Vec<String>,
    /// Resolved parameters, including overrides from flags.
    pub parameters: BTreeMap<String, String>,
    pub tool_version: String,
    /// SHA-256 of each input file, keyed by the path as given.
    pub input_hashes: BTreeMap<String, String>,
    /// Output file names, relative to the output directory.
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: Vec<String>, parameters: BTreeMap<String, String>) -> Self {
        RunManifest {
            command,
            parameters,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_hashes: BTreeMap::new(),
            outputs: Vec::new(),
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }

    /// Read the manifest embedded in an output file: the `manifest` field of
    /// a JSON document, or a leading `# manifest:` line.
    pub fn read_from(path: &Path) -> Result<RunManifest, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let bad = |msg: &str| CliError::Usage(format!("{}: {msg}", path.display()));
        if let Some(first) = text.lines().next() {
            if let Some(json) = first.strip_prefix(MANIFEST_PREFIX) {
                return serde_json::from_str(json).map_err(|e| bad(&e.to_string()));
            }
        }
        let doc: serde_json::Value = serde_json::from_str(&text).map_err(|_| bad("no embedded manifest"))?;
        let m = doc.get("manifest").ok_or_else(|| bad("no embedded manifest"))?;
        serde_json::from_value(m.clone()).map_err(|e| bad(&e.to_string()))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn roundtrip_through_a_file() {
        let dir = tempfile::tempdir().unwrap();
        let m = RunManifest::new(vec!["derive".into(), "galilean".into(), "2".into()], BTreeMap::new());
        let csv = dir.path().join("a.csv");
        std::fs::write(&csv, format!("{MANIFEST_PREFIX}{}\nx\n1\n", m.to_json_line())).unwrap();
        assert_eq!(RunManifest::read_from(&csv).unwrap(), m);
        let json = dir.path().join("a.json");
        std::fs::write(&json, serde_json::json!({ "manifest": m, "result": 1 }).to_string()).unwrap();
        assert_eq!(RunManifest::read_from(&json).unwrap(), m);
    }
}
