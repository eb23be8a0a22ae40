//! Output directory handling: every file a command writes is recorded, and a
//! manifest with SHA-256 digests of inputs and outputs closes the run.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Serialize)]
struct FileDigest {
    path: String,
    sha256: String,
    bytes: u64,
}

#[derive(Debug, Serialize)]
struct Manifest<'a, C: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a [String],
    config: &'a C,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
    elapsed_ms: u128,
    finished_unix: u64,
}

pub struct Artifacts {
    dir: PathBuf,
    inputs: Vec<PathBuf>,
    outputs: Vec<PathBuf>,
    started: Instant,
}

fn digest(path: &Path) -> std::io::Result<FileDigest> {
    let data = std::fs::read(path)?;
    let mut hex = String::with_capacity(64);
    for b in Sha256::digest(&data) {
        let _ = write!(hex, "{b:02x}");
    }
    Ok(FileDigest { path: path.display().to_string(), sha256: hex, bytes: data.len() as u64 })
}

impl Artifacts {
    pub fn new(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(Artifacts { dir, inputs: Vec::new(), outputs: Vec::new(), started: Instant::now() })
    }

    pub fn input(&mut self, path: impl Into<PathBuf>) {
        let p = path.into();
        if p.is_file() && !self.inputs.contains(&p) {
            self.inputs.push(p);
        }
    }

    pub fn text(&mut self, name: &str, contents: &str) -> std::io::Result<PathBuf> {
        let p = self.dir.join(name);
        std::fs::write(&p, contents)?;
        if !self.outputs.contains(&p) {
            self.outputs.push(p.clone());
        }
        Ok(p)
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> std::io::Result<PathBuf> {
        let mut s = serde_json::to_string_pretty(value).map_err(std::io::Error::other)?;
        s.push('\n');
        self.text(name, &s)
    }

    /// Comma-separated rows under a header line.
    pub fn csv<R: AsRef<[String]>>(&mut self, name: &str, header: &[&str], rows: &[R]) -> std::io::Result<PathBuf> {
        let mut s = header.join(",");
        s.push('\n');
        for r in rows {
            s.push_str(&r.as_ref().join(","));
            s.push('\n');
        }
        self.text(name, &s)
    }

    /// Write the manifest; must be the last output.
    pub fn finish<C: Serialize>(self, command: &[String], config: &C) -> std::io::Result<PathBuf> {
        let m = Manifest {
            tool: "formstat",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            inputs: self.inputs.iter().map(|p| digest(p)).collect::<std::io::Result<_>>()?,
            outputs: self.outputs.iter().map(|p| digest(p)).collect::<std::io::Result<_>>()?,
            elapsed_ms: self.started.elapsed().as_millis(),
            finished_unix: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        };
        let mut s = serde_json::to_string_pretty(&m).map_err(std::io::Error::other)?;
        s.push('\n');
        let p = self.dir.join(MANIFEST);
        std::fs::write(&p, s)?;
        Ok(p)
    }
}
