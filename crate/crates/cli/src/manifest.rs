use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::Failure;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

/// Provenance record written next to every command's outputs.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub params: Value,
    pub inputs: Vec<FileDigest>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub wall_time_seconds: f64,
    pub outputs: Vec<FileDigest>,
    pub results: Value,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Collects output files for one command and writes the manifest last.
pub struct Run {
    out_dir: PathBuf,
    command: String,
    started: Instant,
    pub params: Value,
    pub inputs: Vec<FileDigest>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    outputs: Vec<FileDigest>,
}

impl Run {
    pub fn new(out_dir: &Path, command: &str, params: Value, threads: Option<usize>) -> Result<Self, Failure> {
        fs::create_dir_all(out_dir).map_err(|e| Failure::io(format!("cannot create {}: {e}", out_dir.display())))?;
        Ok(Run {
            out_dir: out_dir.to_path_buf(),
            command: command.to_string(),
            started: Instant::now(),
            params,
            inputs: Vec::new(),
            seed: None,
            threads,
            outputs: Vec::new(),
        })
    }

    /// Renders `name` through `render` and writes it into the output directory.
    pub fn write<F>(&mut self, name: &str, render: F) -> Result<(), Failure>
    where
        F: FnOnce(&mut Vec<u8>) -> gspectra::Result<()>,
    {
        let mut bytes = Vec::new();
        render(&mut bytes).map_err(Failure::from)?;
        let path = self.out_dir.join(name);
        fs::write(&path, &bytes).map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))?;
        self.outputs.push(FileDigest {
            path: name.to_string(),
            sha256: sha256_hex(&bytes),
        });
        Ok(())
    }

    pub fn finish(self, results: Value) -> Result<(), Failure> {
        let manifest = RunManifest {
            schema_version: SCHEMA_VERSION,
            tool: env!("CARGO_BIN_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: self.command,
            params: self.params,
            inputs: self.inputs,
            seed: self.seed,
            threads: self.threads,
            wall_time_seconds: self.started.elapsed().as_secs_f64(),
            outputs: self.outputs,
            results,
        };
        let path = self.out_dir.join("manifest.json");
        let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        text.push('\n');
        fs::write(&path, text).map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))
    }
}
