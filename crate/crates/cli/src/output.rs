//! Report files: round-trip-exact CSV numbers, config hashes, and a
//! single-writer output directory convention.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// 17 significant digits: doubles survive a parse round trip.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// SHA-256 of the resolved configuration's canonical JSON, hex-encoded.
pub fn config_hash<T: Serialize>(config: &T) -> Result<String> {
    let json = serde_json::to_string(config)?;
    let digest = Sha256::digest(json.as_bytes());
    let mut hex = String::with_capacity(64);
    for byte in digest {
        write!(hex, "{byte:02x}").unwrap();
    }
    Ok(hex)
}

/// A CSV table with a provenance comment header.
pub struct CsvTable {
    buffer: String,
}

impl CsvTable {
    pub fn new(hash: &str, seed: u64, columns: &[&str]) -> Self {
        let mut buffer = String::new();
        writeln!(buffer, "# config_hash={hash} seed={seed}").unwrap();
        writeln!(buffer, "{}", columns.join(",")).unwrap();
        CsvTable { buffer }
    }

    pub fn row(&mut self, cells: &[String]) {
        writeln!(self.buffer, "{}", cells.join(",")).unwrap();
    }

    pub fn contents(&self) -> &str {
        &self.buffer
    }
}

/// Where report files go; `None` means stdout-only operation.
pub struct OutputDir {
    dir: Option<PathBuf>,
}

impl OutputDir {
    pub fn new(dir: Option<PathBuf>) -> Result<Self> {
        if let Some(d) = &dir {
            std::fs::create_dir_all(d)
                .with_context(|| format!("creating output directory {}", d.display()))?;
        }
        Ok(OutputDir { dir })
    }

    pub fn write(&self, name: &str, contents: &str) -> Result<Option<PathBuf>> {
        let Some(dir) = &self.dir else {
            return Ok(None);
        };
        let path = dir.join(name);
        std::fs::write(&path, contents)
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(Some(path))
    }

    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> Result<Option<PathBuf>> {
        let mut json = serde_json::to_string_pretty(value)?;
        json.push('\n');
        self.write(name, &json)
    }
}

/// Parses a comma-separated list of floats (t grids, spectra).
pub fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .with_context(|| format!("invalid number {tok:?}"))
        })
        .collect()
}

/// Reads a float list from a file: comma or whitespace separated.
pub fn read_f64_list(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|tok| !tok.is_empty())
        .map(|tok| {
            tok.parse::<f64>()
                .with_context(|| format!("invalid number {tok:?} in {}", path.display()))
        })
        .collect()
}
