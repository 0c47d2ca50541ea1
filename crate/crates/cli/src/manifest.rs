//! Run manifest recorded as `#` header lines in every output file, and
//! atomic output writing.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub config_path: Option<String>,
    pub seed: u64,
    pub output_dir: String,
    pub tool_version: &'static str,
    /// (label, sha256 hex) per input file, in argument order.
    pub inputs: Vec<(String, String)>,
}

impl RunManifest {
    pub fn new(command: &str, config_path: Option<&Path>, seed: u64, output_dir: &Path) -> Self {
        RunManifest {
            command: command.to_string(),
            config_path: config_path.map(|p| p.display().to_string()),
            seed,
            output_dir: output_dir.display().to_string(),
            tool_version: env!("CARGO_PKG_VERSION"),
            inputs: Vec::new(),
        }
    }

    pub fn record_input(&mut self, label: &str, bytes: &[u8]) {
        self.inputs
            .push((label.to_string(), hex::encode(Sha256::digest(bytes))));
    }

    pub fn header_lines(&self) -> Vec<String> {
        let mut lines = vec![
            format!("tool: sbl {}", self.tool_version),
            format!("command: {}", self.command),
            format!(
                "config: {}",
                self.config_path.as_deref().unwrap_or("(none)")
            ),
            format!("seed: {}", self.seed),
            format!("output_dir: {}", self.output_dir),
        ];
        lines.extend(
            self.inputs
                .iter()
                .map(|(label, digest)| format!("input_sha256 {label}: {digest}")),
        );
        lines
    }
}

/// Output files staged in memory and written together once every one of them
/// has been produced, so a failing command leaves nothing behind.
#[derive(Debug, Default)]
pub struct Outputs {
    files: Vec<(String, String)>,
}

impl Outputs {
    pub fn add(&mut self, name: impl Into<String>, contents: String) {
        self.files.push((name.into(), contents));
    }

    /// Writes each file through a temporary in the same directory followed by
    /// a rename.
    pub fn commit(self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let mut written = Vec::with_capacity(self.files.len());
        for (name, contents) in self.files {
            let target = dir.join(&name);
            let mut tmp = tempfile::NamedTempFile::new_in(dir)
                .with_context(|| format!("staging {}", target.display()))?;
            tmp.write_all(contents.as_bytes())?;
            tmp.flush()?;
            tmp.persist(&target)
                .with_context(|| format!("writing {}", target.display()))?;
            written.push(target);
        }
        Ok(written)
    }
}
