use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde_json::json;
use sha2::{Digest, Sha256};

use crate::Report;

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Record of one invocation: what was read, what was written, exact counts.
pub struct RunManifest {
    arguments: Vec<String>,
    inputs: Vec<(PathBuf, String)>,
    pub counts: BTreeMap<String, u64>,
}

impl RunManifest {
    pub fn new(arguments: &[String]) -> Self {
        Self { arguments: arguments.to_vec(), inputs: Vec::new(), counts: BTreeMap::new() }
    }

    pub fn read_input(&mut self, path: &Path) -> std::io::Result<String> {
        let bytes = fs::read(path)?;
        self.inputs.push((path.to_path_buf(), sha256_hex(&bytes)));
        String::from_utf8(bytes).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
    }

    pub fn count(&mut self, key: impl Into<String>, value: u64) {
        self.counts.insert(key.into(), value);
    }

    /// Write `<command>.json`, the report's extra files and `run-manifest.json`.
    pub fn write(&self, dir: &Path, command: &str, report: &Report, elapsed: Duration) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        let mut files = vec![(format!("{command}.json"), serde_json::to_string_pretty(&report.json)? + "\n")];
        files.extend(report.files.iter().cloned());
        let mut outputs = Vec::new();
        for (name, contents) in &files {
            let path = dir.join(name);
            fs::write(&path, contents)?;
            outputs.push(json!({"path": path, "sha256": sha256_hex(contents.as_bytes())}));
        }
        let doc = json!({
            "tool": "monoara",
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "arguments": self.arguments,
            "inputs": self.inputs.iter().map(|(p, h)| json!({"path": p, "sha256": h})).collect::<Vec<_>>(),
            "counts": self.counts,
            "outputs": outputs,
            "status": report.status,
            "timings": {"seconds": elapsed.as_secs_f64()},
        });
        fs::write(dir.join("run-manifest.json"), serde_json::to_string_pretty(&doc)? + "\n")
    }
}
